// Copyright 2026-present the acorn-hybrid project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <memory>
#include <regex>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "acorn/dataset.h"

namespace acorn {

/// Boolean filter over attribute tuples: equals, between (inclusive),
/// contains-any over a keyword set, regex search over text, and conjunctions.
///
/// Regex semantics are "pattern matches some substring" (std::regex_search,
/// ECMAScript grammar); anchors such as `^` are honored.
///
/// Predicates are immutable values; copies share the expression tree.
class Predicate {
public:
    enum class Op { kConst, kEquals, kBetween, kContains, kRegex, kAnd };

    static Predicate
    always_true();
    static Predicate
    always_false();
    static Predicate
    equals(std::size_t attr, std::int64_t value);
    /// Throws kInvalidArgument when lo > hi.
    static Predicate
    between(std::size_t attr, std::int64_t lo, std::int64_t hi);
    static Predicate
    contains(std::size_t attr, std::vector<std::uint32_t> any_of);
    static Predicate
    regex_match(std::size_t attr, const std::string& pattern);
    static Predicate
    conjunction(std::vector<Predicate> args);

    Op
    op() const;

    /// Attribute position (leaf ops only).
    std::size_t
    attr() const;
    /// Bounds of equals/between; equals has lo == hi.
    std::int64_t
    lo() const;
    std::int64_t
    hi() const;
    /// Value of a constant predicate.
    bool
    constant() const;
    /// Keyword codes of contains, sorted.
    const std::vector<std::uint32_t>&
    codes() const;
    /// Conjuncts of an and-node.
    const std::vector<Predicate>&
    args() const;

    /// Throws kSchemaMismatch if any referenced attribute is missing or of
    /// an incompatible kind.
    void
    validate(const AttributeSchema& schema) const;

    /// Hot-path evaluation against a sealed table row; assumes validate()
    /// already passed for the table's schema.
    bool
    matches(const AttributeTable& table, NodeId row) const;

    /// Schema-checking evaluation against a single tuple. Keyword sets are
    /// intersected element-wise, never through bitsets.
    bool
    evaluate(const AttributeTuple& tuple) const;

    nlohmann::json
    to_json(const KeywordDictionary* dictionary = nullptr) const;

    /// Parses the JSON expression form. Keyword strings are resolved through
    /// `dictionary`; an unknown word matches nothing.
    static Predicate
    from_json(const nlohmann::json& j, const KeywordDictionary* dictionary = nullptr);

    struct Node;

private:
    explicit Predicate(std::shared_ptr<const Node> node) : node_(std::move(node)) {
    }

    std::shared_ptr<const Node> node_;
};

bool
evaluate(const Predicate& p, const AttributeTuple& tuple);

struct SelectivityEstimate {
    enum class Method { kExactScan, kSample };
    double value = 0.0;
    Method method = Method::kExactScan;
    std::size_t sample_size = 0;
};

/// Fraction of rows passing `p`; 0.0 for an empty dataset.
SelectivityEstimate
exact_selectivity(const Predicate& p, const Dataset& ds);

/// Passing fraction over a uniform sample drawn without replacement.
SelectivityEstimate
estimate_selectivity(const Predicate& p,
                     const Dataset& ds,
                     std::size_t sample_size,
                     std::uint64_t seed);

/// Ids of rows passing `p`, ascending.
std::vector<NodeId>
passing_ids(const Predicate& p, const Dataset& ds);

struct HybridQuery {
    std::vector<float> vector;
    Predicate predicate = Predicate::always_true();
    std::size_t k = 10;
};

/// Signed query correlation of a workload: the mean over queries of
/// E_R[g(x, R)] - g(x, X_p), with g the minimum (reported) distance and R a
/// uniform random |X_p|-subset of all vectors, estimated with `trials` draws.
/// Throws kEmptyPredicateSet if some query has no passing rows.
double
query_correlation(const Dataset& ds,
                  std::span<const HybridQuery> workload,
                  std::size_t trials,
                  std::uint64_t seed);

}  // namespace acorn
