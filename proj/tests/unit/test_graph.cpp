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
#include <catch_amalgamated.hpp>

#include <cmath>

#include "acorn/error.h"
#include "acorn/graph.h"
#include "test_util.h"

using namespace acorn;

namespace {

ErrorCode
code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an acorn::Error");
    return ErrorCode::kInvalidArgument;
}

std::string
violation_of(const GraphIndex& g) {
    try {
        g.validate();
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kInvariantViolation);
        return e.detail();
    }
    return "";
}

}  // namespace

TEST_CASE("build parameters enforce variant constraints", "[graph]") {
    CHECK_NOTHROW(BuildParams::hnsw(16, 40, 1).validate());
    CHECK_NOTHROW(BuildParams::acorn1(16, 40, 1).validate());
    CHECK_NOTHROW(BuildParams::acorn_gamma(32, 40, 12, 64, 1).validate());
    CHECK_NOTHROW(BuildParams::acorn_gamma(32, 40, 12, kUnboundedMBeta, 1).validate());
    CHECK(code_of([] { BuildParams::acorn_gamma(32, 40, 12, 385, 1).validate(); }) == ErrorCode::kInvalidArgument);
    CHECK(code_of([] { BuildParams::hnsw(1, 40, 1).validate(); }) == ErrorCode::kInvalidArgument);
    BuildParams h = BuildParams::hnsw(16, 40, 1);
    h.gamma = 2;
    CHECK(code_of([&] { h.validate(); }) == ErrorCode::kInvalidArgument);
    BuildParams a = BuildParams::acorn1(16, 40, 1);
    a.m_beta = 8;
    CHECK(code_of([&] { a.validate(); }) == ErrorCode::kInvalidArgument);
    CHECK(BuildParams::hnsw(32, 40, 1).m_l() == Catch::Approx(1.0 / std::log(32.0)));
}

TEST_CASE("names parse back to their enumerators", "[graph]") {
    for (Variant v : {Variant::kHnsw, Variant::kAcornGamma, Variant::kAcorn1}) {
        CHECK(parse_variant(variant_name(v)) == v);
    }
    for (PruneStrategy s : {PruneStrategy::kAcornMBeta, PruneStrategy::kRngMetadataAware,
                            PruneStrategy::kHnswMetadataBlind, PruneStrategy::kNone}) {
        CHECK(parse_prune_strategy(prune_strategy_name(s)) == s);
    }
    CHECK(code_of([] { parse_variant("bogus"); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("level assignment follows the floor of -ln(u) * m_L", "[graph]") {
    const double m_l = 1.0 / std::log(32.0);
    CHECK(LevelSampler::level_for(0.999999, m_l) == 0);
    CHECK(LevelSampler::level_for(1.0 / 32.0 + 1e-12, m_l) == 0);
    CHECK(LevelSampler::level_for(1.0 / 32.0 - 1e-12, m_l) == 1);
    CHECK(LevelSampler::level_for(1.0 / 1024.0 - 1e-15, m_l) == 2);
    CHECK(LevelSampler::level_for(1e-300, m_l) <= 64);

    // Tail law at small scale: P(level >= 1) = 1/M.
    LevelSampler s(m_l, 42);
    const int n = 200000;
    int at_least_one = 0;
    for (int i = 0; i < n; ++i) {
        at_least_one += s.next() >= 1 ? 1 : 0;
    }
    const double p = 1.0 / 32.0;
    const double sd = std::sqrt(n * p * (1 - p));
    CHECK(std::abs(at_least_one - n * p) < 4 * sd);
}

TEST_CASE("degree caps depend on the variant", "[graph]") {
    Dataset ds = testing::random_dataset(10, 2, 2, 3, 1);
    std::vector<std::uint32_t> levels(10, 0);
    levels[3] = 1;
    GraphIndex h(ds, BuildParams::hnsw(4, 10, 1), levels);
    GraphIndex g(ds, BuildParams::acorn_gamma(4, 10, 3, 8, 1), levels);
    GraphIndex a(ds, BuildParams::acorn1(4, 10, 1), levels);
    CHECK(h.level_cap(0) == 8);
    CHECK(h.level_cap(1) == 4);
    CHECK(g.level_cap(0) == 12);
    CHECK(g.level_cap(1) == 12);
    CHECK(a.level_cap(0) == 8);
    CHECK(a.level_cap(1) == 4);
    CHECK(g.traversal_bound(0) == 4);
    CHECK(a.traversal_bound(0) == 8);
    CHECK(h.traversal_bound(0) == 8);
    CHECK(h.max_level() == 1);
    CHECK(h.entry_point() == 3);
    CHECK(h.level_nodes(1).size() == 1);
}

TEST_CASE("neighbor lists reject malformed edits", "[graph]") {
    Dataset ds = testing::random_dataset(6, 2, 2, 3, 1);
    GraphIndex g(ds, BuildParams::hnsw(2, 10, 1), std::vector<std::uint32_t>(6, 0));
    std::vector<NodeId> ok = {1, 2, 3};
    g.set_neighbors(0, 0, ok);
    CHECK(std::vector<NodeId>(g.neighbors(0, 0).begin(), g.neighbors(0, 0).end()) == ok);
    std::vector<NodeId> self = {0};
    std::vector<NodeId> many = {1, 2, 3, 4, 5};
    std::vector<NodeId> dup = {1, 1};
    std::vector<NodeId> out_of_range = {9};
    CHECK(code_of([&] { g.set_neighbors(0, 0, self); }) == ErrorCode::kSelfLoop);
    CHECK(code_of([&] { g.set_neighbors(0, 0, many); }) == ErrorCode::kDegreeOverflow);
    CHECK(code_of([&] { g.set_neighbors(0, 0, dup); }) == ErrorCode::kInvalidArgument);
    CHECK(code_of([&] { g.set_neighbors(0, 0, out_of_range); }) == ErrorCode::kInvalidArgument);
    CHECK(code_of([&] { g.set_neighbors(0, 1, ok); }) == ErrorCode::kUnknownNode);
    CHECK(code_of([&] { g.neighbors(7, 0); }) == ErrorCode::kUnknownNode);
}

TEST_CASE("validate names the violated invariant", "[graph]") {
    Dataset ds = testing::random_dataset(6, 2, 2, 3, 1);
    GraphIndex g(ds, BuildParams::hnsw(2, 10, 1), std::vector<std::uint32_t>(6, 0));
    CHECK(violation_of(g).empty());
    std::vector<NodeId> dangling = {6};
    g.assign(1, 0, dangling);
    CHECK(violation_of(g) == "dangling edge");
    std::vector<NodeId> self = {1};
    g.assign(1, 0, self);
    CHECK(violation_of(g) == "self loop");
    std::vector<NodeId> dup = {2, 2};
    g.assign(1, 0, dup);
    CHECK(violation_of(g) == "duplicate edge");
    std::vector<NodeId> fine = {2};
    g.assign(1, 0, fine);
    CHECK(violation_of(g).empty());
}

TEST_CASE("compact keeps lists and equality", "[graph]") {
    Dataset ds = testing::random_dataset(6, 2, 2, 3, 1);
    GraphIndex g(ds, BuildParams::acorn_gamma(2, 10, 4, 2, 1), std::vector<std::uint32_t>(6, 0));
    std::vector<NodeId> a = {1, 2};
    std::vector<NodeId> b = {0, 3, 4};
    g.set_neighbors(0, 0, a);
    g.set_neighbors(5, 0, b);
    GraphIndex copy = g;
    g.compact();
    CHECK(g.stride(0) == 3);
    CHECK(g == copy);
    CHECK(g.total_edges() == 5);
    CHECK(g.mean_degrees()[0] == Catch::Approx(5.0 / 6.0));
}
