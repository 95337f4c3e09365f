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
#include "acorn/predicate.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "acorn/error.h"
#include "acorn/random.h"

namespace acorn {

struct Predicate::Node {
    Op op = Op::kConst;
    bool value = false;
    std::size_t attr = 0;
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    std::vector<std::uint32_t> codes;
    std::uint64_t mask = 0;
    std::string pattern;
    std::shared_ptr<const std::regex> regex;
    std::vector<Predicate> args;
};

namespace {

bool
sorted_intersects(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            return true;
        }
        if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    return false;
}

const char*
kind_name(AttributeKind kind) {
    switch (kind) {
        case AttributeKind::kInteger:
            return "integer";
        case AttributeKind::kDate:
            return "date";
        case AttributeKind::kKeywords:
            return "keywords";
        case AttributeKind::kText:
            return "text";
    }
    return "?";
}

std::int64_t
json_scalar(const nlohmann::json& v) {
    if (v.is_number_integer()) {
        return v.get<std::int64_t>();
    }
    if (v.is_string()) {
        return parse_date(v.get<std::string>());
    }
    throw Error(ErrorCode::kParseError, "expected an integer or a YYYY-MM-DD date, got " + v.dump());
}

}  // namespace

Predicate
Predicate::always_true() {
    auto n = std::make_shared<Node>();
    n->op = Op::kConst;
    n->value = true;
    return Predicate(std::move(n));
}

Predicate
Predicate::always_false() {
    auto n = std::make_shared<Node>();
    n->op = Op::kConst;
    n->value = false;
    return Predicate(std::move(n));
}

Predicate
Predicate::equals(std::size_t attr, std::int64_t value) {
    auto n = std::make_shared<Node>();
    n->op = Op::kEquals;
    n->attr = attr;
    n->lo = value;
    n->hi = value;
    return Predicate(std::move(n));
}

Predicate
Predicate::between(std::size_t attr, std::int64_t lo, std::int64_t hi) {
    if (lo > hi) {
        throw Error(ErrorCode::kInvalidArgument,
                    "between requires lo <= hi (" + std::to_string(lo) + " > " +
                        std::to_string(hi) + ")");
    }
    auto n = std::make_shared<Node>();
    n->op = Op::kBetween;
    n->attr = attr;
    n->lo = lo;
    n->hi = hi;
    return Predicate(std::move(n));
}

Predicate
Predicate::contains(std::size_t attr, std::vector<std::uint32_t> any_of) {
    auto n = std::make_shared<Node>();
    n->op = Op::kContains;
    n->attr = attr;
    std::sort(any_of.begin(), any_of.end());
    any_of.erase(std::unique(any_of.begin(), any_of.end()), any_of.end());
    for (std::uint32_t c : any_of) {
        if (c < kBitsetKeywordLimit) {
            n->mask |= std::uint64_t{1} << c;
        }
    }
    n->codes = std::move(any_of);
    return Predicate(std::move(n));
}

Predicate
Predicate::regex_match(std::size_t attr, const std::string& pattern) {
    auto n = std::make_shared<Node>();
    n->op = Op::kRegex;
    n->attr = attr;
    n->pattern = pattern;
    try {
        n->regex = std::make_shared<const std::regex>(pattern, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
        throw Error(ErrorCode::kInvalidArgument, "bad regex '" + pattern + "': " + e.what());
    }
    return Predicate(std::move(n));
}

Predicate
Predicate::conjunction(std::vector<Predicate> args) {
    if (args.empty()) {
        return always_true();
    }
    if (args.size() == 1) {
        return args.front();
    }
    auto n = std::make_shared<Node>();
    n->op = Op::kAnd;
    n->args = std::move(args);
    return Predicate(std::move(n));
}

Predicate::Op
Predicate::op() const {
    return node_->op;
}

std::size_t
Predicate::attr() const {
    return node_->attr;
}

std::int64_t
Predicate::lo() const {
    return node_->lo;
}

std::int64_t
Predicate::hi() const {
    return node_->hi;
}

bool
Predicate::constant() const {
    return node_->value;
}

const std::vector<std::uint32_t>&
Predicate::codes() const {
    return node_->codes;
}

const std::vector<Predicate>&
Predicate::args() const {
    return node_->args;
}

void
Predicate::validate(const AttributeSchema& schema) const {
    const Node& n = *node_;
    auto expect = [&](std::initializer_list<AttributeKind> kinds, const char* what) {
        if (n.attr >= schema.size()) {
            throw Error(ErrorCode::kSchemaMismatch,
                        std::string(what) + " references attribute " + std::to_string(n.attr) +
                            " but the schema has " + std::to_string(schema.size()));
        }
        AttributeKind k = schema[n.attr].kind;
        if (std::find(kinds.begin(), kinds.end(), k) == kinds.end()) {
            throw Error(ErrorCode::kSchemaMismatch, std::string(what) + " cannot apply to " +
                                                        kind_name(k) + " attribute '" +
                                                        schema[n.attr].name + "'");
        }
    };
    switch (n.op) {
        case Op::kConst:
            return;
        case Op::kEquals:
            expect({AttributeKind::kInteger, AttributeKind::kDate}, "equals");
            return;
        case Op::kBetween:
            expect({AttributeKind::kInteger, AttributeKind::kDate}, "between");
            return;
        case Op::kContains:
            expect({AttributeKind::kKeywords}, "contains");
            return;
        case Op::kRegex:
            expect({AttributeKind::kText}, "regex");
            return;
        case Op::kAnd:
            for (const Predicate& a : n.args) {
                a.validate(schema);
            }
            return;
    }
}

bool
Predicate::matches(const AttributeTable& table, NodeId row) const {
    const Node& n = *node_;
    switch (n.op) {
        case Op::kConst:
            return n.value;
        case Op::kEquals:
            return table.integer(n.attr, row) == n.lo;
        case Op::kBetween: {
            std::int64_t v = table.integer(n.attr, row);
            return v >= n.lo && v <= n.hi;
        }
        case Op::kContains:
            // Bitset columns only exist when every stored code is below the
            // limit, so dropping larger query codes from the mask is exact.
            if (table.uses_bitsets(n.attr)) {
                return (table.keyword_mask(n.attr, row) & n.mask) != 0;
            }
            return sorted_intersects(table.keywords(n.attr, row), n.codes);
        case Op::kRegex:
            return std::regex_search(table.text(n.attr, row), *n.regex);
        case Op::kAnd:
            for (const Predicate& a : n.args) {
                if (!a.matches(table, row)) {
                    return false;
                }
            }
            return true;
    }
    return false;
}

bool
Predicate::evaluate(const AttributeTuple& tuple) const {
    const Node& n = *node_;
    auto value = [&]() -> const AttributeValue& {
        if (n.attr >= tuple.size()) {
            throw Error(ErrorCode::kSchemaMismatch,
                        "predicate references attribute " + std::to_string(n.attr) +
                            " of a " + std::to_string(tuple.size()) + "-tuple");
        }
        return tuple[n.attr];
    };
    auto scalar = [&]() -> std::int64_t {
        const AttributeValue& v = value();
        if (const auto* i = std::get_if<std::int64_t>(&v)) {
            return *i;
        }
        if (const auto* d = std::get_if<DateValue>(&v)) {
            return d->days;
        }
        throw Error(ErrorCode::kSchemaMismatch, "comparison applied to a non-scalar attribute");
    };
    switch (n.op) {
        case Op::kConst:
            return n.value;
        case Op::kEquals:
            return scalar() == n.lo;
        case Op::kBetween: {
            std::int64_t v = scalar();
            return v >= n.lo && v <= n.hi;
        }
        case Op::kContains: {
            const auto* set = std::get_if<KeywordSet>(&value());
            if (set == nullptr) {
                throw Error(ErrorCode::kSchemaMismatch, "contains applied to a non-keyword attribute");
            }
            for (std::uint32_t c : set->codes) {
                if (std::find(n.codes.begin(), n.codes.end(), c) != n.codes.end()) {
                    return true;
                }
            }
            return false;
        }
        case Op::kRegex: {
            const auto* s = std::get_if<std::string>(&value());
            if (s == nullptr) {
                throw Error(ErrorCode::kSchemaMismatch, "regex applied to a non-text attribute");
            }
            return std::regex_search(*s, *n.regex);
        }
        case Op::kAnd: {
            // Evaluate every conjunct so schema errors surface regardless of order.
            bool all = true;
            for (const Predicate& a : n.args) {
                all = a.evaluate(tuple) && all;
            }
            return all;
        }
    }
    return false;
}

nlohmann::json
Predicate::to_json(const KeywordDictionary* dictionary) const {
    const Node& n = *node_;
    switch (n.op) {
        case Op::kConst:
            return {{"op", n.value ? "true" : "false"}};
        case Op::kEquals:
            return {{"op", "equals"}, {"attr", n.attr}, {"value", n.lo}};
        case Op::kBetween:
            return {{"op", "between"}, {"attr", n.attr}, {"lo", n.lo}, {"hi", n.hi}};
        case Op::kContains: {
            nlohmann::json any = nlohmann::json::array();
            for (std::uint32_t c : n.codes) {
                if (dictionary != nullptr && c < dictionary->size()) {
                    any.push_back(dictionary->word(c));
                } else {
                    any.push_back(c);
                }
            }
            return {{"op", "contains"}, {"attr", n.attr}, {"any", any}};
        }
        case Op::kRegex:
            return {{"op", "regex"}, {"attr", n.attr}, {"pattern", n.pattern}};
        case Op::kAnd: {
            nlohmann::json args = nlohmann::json::array();
            for (const Predicate& a : n.args) {
                args.push_back(a.to_json(dictionary));
            }
            return {{"op", "and"}, {"args", args}};
        }
    }
    return nullptr;
}

Predicate
Predicate::from_json(const nlohmann::json& j, const KeywordDictionary* dictionary) {
    if (!j.is_object() || !j.contains("op") || !j["op"].is_string()) {
        throw Error(ErrorCode::kParseError, "predicate must be an object with a string 'op': " +
                                                j.dump());
    }
    const std::string op = j["op"].get<std::string>();
    auto attr = [&]() -> std::size_t {
        if (!j.contains("attr") || !j["attr"].is_number_integer() || j["attr"].get<std::int64_t>() < 0) {
            throw Error(ErrorCode::kParseError, op + " needs a non-negative integer 'attr'");
        }
        return j["attr"].get<std::size_t>();
    };
    auto field = [&](const char* name) -> const nlohmann::json& {
        if (!j.contains(name)) {
            throw Error(ErrorCode::kParseError, op + " needs field '" + name + "'");
        }
        return j[name];
    };
    if (op == "true") {
        return always_true();
    }
    if (op == "false") {
        return always_false();
    }
    if (op == "equals") {
        return equals(attr(), json_scalar(field("value")));
    }
    if (op == "between") {
        return between(attr(), json_scalar(field("lo")), json_scalar(field("hi")));
    }
    if (op == "contains") {
        const auto& any = field("any");
        if (!any.is_array()) {
            throw Error(ErrorCode::kParseError, "contains 'any' must be an array");
        }
        std::vector<std::uint32_t> codes;
        for (const auto& v : any) {
            if (v.is_number_unsigned()) {
                codes.push_back(v.get<std::uint32_t>());
            } else if (v.is_string()) {
                if (dictionary == nullptr) {
                    throw Error(ErrorCode::kParseError,
                                "keyword strings need a dataset dictionary");
                }
                if (auto code = dictionary->find(v.get<std::string>())) {
                    codes.push_back(*code);
                }
            } else {
                throw Error(ErrorCode::kParseError, "contains entries must be codes or words");
            }
        }
        return contains(attr(), std::move(codes));
    }
    if (op == "regex") {
        const auto& pattern = field("pattern");
        if (!pattern.is_string()) {
            throw Error(ErrorCode::kParseError, "regex 'pattern' must be a string");
        }
        return regex_match(attr(), pattern.get<std::string>());
    }
    if (op == "and") {
        const auto& args = field("args");
        if (!args.is_array()) {
            throw Error(ErrorCode::kParseError, "and 'args' must be an array");
        }
        std::vector<Predicate> parsed;
        for (const auto& a : args) {
            parsed.push_back(from_json(a, dictionary));
        }
        return conjunction(std::move(parsed));
    }
    throw Error(ErrorCode::kParseError, "unknown predicate op '" + op + "'");
}

bool
evaluate(const Predicate& p, const AttributeTuple& tuple) {
    return p.evaluate(tuple);
}

SelectivityEstimate
exact_selectivity(const Predicate& p, const Dataset& ds) {
    p.validate(ds.attributes().schema());
    SelectivityEstimate est;
    est.method = SelectivityEstimate::Method::kExactScan;
    if (ds.size() == 0) {
        return est;
    }
    std::size_t count = 0;
    for (NodeId i = 0; i < ds.size(); ++i) {
        count += p.matches(ds.attributes(), i) ? 1 : 0;
    }
    est.value = static_cast<double>(count) / static_cast<double>(ds.size());
    return est;
}

SelectivityEstimate
estimate_selectivity(const Predicate& p,
                     const Dataset& ds,
                     std::size_t sample_size,
                     std::uint64_t seed) {
    if (sample_size == 0) {
        throw Error(ErrorCode::kInvalidArgument, "sample_size must be at least 1");
    }
    p.validate(ds.attributes().schema());
    SelectivityEstimate est;
    est.method = SelectivityEstimate::Method::kSample;
    if (ds.size() == 0) {
        return est;
    }
    std::mt19937_64 rng(seed);
    auto rows = sample_without_replacement(ds.size(), sample_size, rng);
    std::size_t count = 0;
    for (NodeId r : rows) {
        count += p.matches(ds.attributes(), r) ? 1 : 0;
    }
    est.sample_size = rows.size();
    est.value = static_cast<double>(count) / static_cast<double>(rows.size());
    return est;
}

std::vector<NodeId>
passing_ids(const Predicate& p, const Dataset& ds) {
    p.validate(ds.attributes().schema());
    std::vector<NodeId> out;
    for (NodeId i = 0; i < ds.size(); ++i) {
        if (p.matches(ds.attributes(), i)) {
            out.push_back(i);
        }
    }
    return out;
}

double
query_correlation(const Dataset& ds,
                  std::span<const HybridQuery> workload,
                  std::size_t trials,
                  std::uint64_t seed) {
    if (trials == 0) {
        throw Error(ErrorCode::kInvalidArgument, "trials must be at least 1");
    }
    if (workload.empty()) {
        return 0.0;
    }
    std::mt19937_64 rng(seed);
    const std::size_t n = ds.size();
    std::vector<float> dist(n);
    std::vector<NodeId> perm(n);
    for (NodeId i = 0; i < n; ++i) {
        perm[i] = i;
    }
    double total = 0.0;
    for (std::size_t qi = 0; qi < workload.size(); ++qi) {
        const HybridQuery& q = workload[qi];
        if (q.vector.size() != ds.dim()) {
            throw Error(ErrorCode::kDimensionMismatch,
                        "query " + std::to_string(qi) + " has dimension " +
                            std::to_string(q.vector.size()));
        }
        q.predicate.validate(ds.attributes().schema());
        std::size_t passers = 0;
        float g_pass = std::numeric_limits<float>::infinity();
        for (NodeId i = 0; i < n; ++i) {
            dist[i] = reported_distance(ds.metric(), ds.distance_to(q.vector.data(), i));
            if (q.predicate.matches(ds.attributes(), i)) {
                ++passers;
                g_pass = std::min(g_pass, dist[i]);
            }
        }
        if (passers == 0) {
            throw Error(ErrorCode::kEmptyPredicateSet,
                        "query " + std::to_string(qi) + " has no passing entities");
        }
        if (passers == n) {
            continue;  // every random subset is X itself
        }
        double random_sum = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
            // Partial Fisher-Yates: the first `passers` slots become a uniform subset.
            float g_rand = std::numeric_limits<float>::infinity();
            for (std::size_t j = 0; j < passers; ++j) {
                std::size_t pick = j + uniform_below(rng, n - j);
                std::swap(perm[j], perm[pick]);
                g_rand = std::min(g_rand, dist[perm[j]]);
            }
            random_sum += g_rand;
        }
        total += random_sum / static_cast<double>(trials) - static_cast<double>(g_pass);
    }
    return total / static_cast<double>(workload.size());
}

}  // namespace acorn
