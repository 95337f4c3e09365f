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

#include "acorn/baselines.h"
#include "acorn/build.h"
#include "acorn/error.h"
#include "acorn/search.h"
#include "test_util.h"

using namespace acorn;

namespace {

// 1-D points at x = id with an integer label per row.
Dataset
line_dataset(const std::vector<std::int64_t>& labels) {
    std::vector<float> v;
    AttributeTable t({{"label", AttributeKind::kInteger}});
    for (std::size_t i = 0; i < labels.size(); ++i) {
        v.push_back(static_cast<float>(i));
        t.append({labels[i]});
    }
    t.seal();
    return Dataset(1, std::move(v), std::move(t));
}

std::vector<NodeId>
ids(const std::vector<Neighbor>& r) {
    std::vector<NodeId> out;
    for (const Neighbor& nb : r) {
        out.push_back(nb.id);
    }
    return out;
}

}  // namespace

TEST_CASE("compressed two-hop expansion follows the m_beta boundary", "[search]") {
    // Passers: 2, 4, 5, 6.
    Dataset ds = line_dataset({0, 0, 1, 0, 1, 1, 1});
    GraphIndex g(ds, BuildParams::acorn_gamma(4, 10, 3, 1, 1), std::vector<std::uint32_t>(7, 0));
    g.set_neighbors(0, 0, std::vector<NodeId>{1, 2, 3});
    g.set_neighbors(1, 0, std::vector<NodeId>{0, 4});
    g.set_neighbors(2, 0, std::vector<NodeId>{0, 4, 5});
    g.set_neighbors(3, 0, std::vector<NodeId>{6, 2});
    Predicate p = Predicate::equals(0, 1);
    SearchCounters c;
    // Node 1 sits inside the verbatim prefix, so its own list is not expanded.
    CHECK(get_neighbors(g, 0, 0, p, Strategy::kCompressed2Hop, c) == std::vector<NodeId>{2, 4, 5, 6});
    CHECK(get_neighbors(g, 0, 0, p, Strategy::kFilterOnly, c) == std::vector<NodeId>{2});
    CHECK(get_neighbors(g, 0, 0, p, Strategy::kUnfiltered, c) == std::vector<NodeId>{1, 2, 3});

    // Output is truncated at M.
    GraphIndex small(ds, BuildParams::acorn_gamma(2, 10, 3, 1, 1), std::vector<std::uint32_t>(7, 0));
    small.set_neighbors(0, 0, std::vector<NodeId>{1, 2, 3});
    small.set_neighbors(2, 0, std::vector<NodeId>{0, 4, 5});
    CHECK(get_neighbors(small, 0, 0, p, Strategy::kCompressed2Hop, c) == std::vector<NodeId>{2, 4});
}

TEST_CASE("full expansion reads direct passers before two-hop ones", "[search]") {
    Dataset ds = line_dataset({0, 0, 1, 0, 1, 1, 0});
    GraphIndex g(ds, BuildParams::acorn1(3, 10, 1), std::vector<std::uint32_t>(7, 0));
    g.set_neighbors(0, 0, std::vector<NodeId>{1, 2, 3});
    g.set_neighbors(1, 0, std::vector<NodeId>{4, 0});
    g.set_neighbors(2, 0, std::vector<NodeId>{4, 5});
    Predicate p = Predicate::equals(0, 1);
    SearchCounters c;
    CHECK(get_neighbors(g, 0, 0, p, Strategy::kAcorn1FullExpansion, c) == std::vector<NodeId>{2, 4, 5});
    CHECK(c.predicate_evaluations > 0);
    CHECK_THROWS_AS(get_neighbors(g, 0, 0, p, Strategy::kCompressed2Hop, c), Error);
    CHECK_THROWS_AS(get_neighbors(g, 9, 0, p, Strategy::kFilterOnly, c), Error);
}

TEST_CASE("always-true hybrid search on HNSW equals textbook HNSW", "[search]") {
    Dataset ds = testing::random_dataset(600, 8, 4, 5, 3);
    GraphIndex g = build(ds, BuildParams::hnsw(8, 40, 5));
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<float> coord(-1.0f, 1.0f);
    for (int i = 0; i < 40; ++i) {
        HybridQuery q;
        for (int d = 0; d < 8; ++d) {
            q.vector.push_back(coord(rng));
        }
        for (std::size_t efs : {10u, 40u}) {
            SearchReport r = hybrid_search(g, q, {10, efs, Strategy::kFilterOnly});
            CHECK(r.ids == testing::reference_hnsw_search(g, q.vector.data(), 10, efs));
            SearchCounters c;
            CHECK(ids(unfiltered_search(g, q.vector.data(), 10, efs, c)) == r.ids);
        }
    }
}

TEST_CASE("results pass the predicate and are sorted", "[search]") {
    Dataset ds = testing::random_dataset(800, 6, 5, 8, 4);
    GraphIndex gamma = build(ds, BuildParams::acorn_gamma(8, 40, 5, 16, 2));
    GraphIndex one = build(ds, BuildParams::acorn1(8, 40, 2));
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<float> coord(-1.0f, 1.0f);
    for (int i = 0; i < 30; ++i) {
        HybridQuery q;
        for (int d = 0; d < 6; ++d) {
            q.vector.push_back(coord(rng));
        }
        q.predicate = Predicate::equals(0, static_cast<std::int64_t>(rng() % 5));
        for (const GraphIndex* g : {&gamma, &one}) {
            SearchReport r =
                hybrid_search(*g, q, {10, 60, default_strategy(g->params().variant)});
            REQUIRE(r.ids.size() == r.distances.size());
            for (std::size_t j = 0; j < r.ids.size(); ++j) {
                CHECK(evaluate(q.predicate, ds.attributes().tuple(r.ids[j])));
                if (j > 0) {
                    CHECK(r.distances[j - 1] <= r.distances[j]);
                }
            }
        }
    }
}

TEST_CASE("a beam as wide as the dataset returns exact results", "[search]") {
    Dataset ds = testing::random_dataset(300, 4, 3, 6, 8);
    // With M close to the passer count and no pruning, each filtered
    // neighborhood holds the 64 nearest passers, which keeps the predicate
    // subgraph connected.
    GraphIndex g = build(ds, BuildParams::acorn_gamma(64, 300, 5, kUnboundedMBeta, 2));
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<float> coord(-1.0f, 1.0f);
    for (int i = 0; i < 20; ++i) {
        HybridQuery q;
        for (int d = 0; d < 4; ++d) {
            q.vector.push_back(coord(rng));
        }
        q.predicate = Predicate::equals(0, static_cast<std::int64_t>(rng() % 3));
        SearchReport r = hybrid_search(g, q, {10, 300, Strategy::kCompressed2Hop});
        CHECK(r.ids == testing::brute_force_knn(ds, q.vector.data(), q.predicate, 10));
    }
}

TEST_CASE("the router sends low-selectivity queries to the pre-filter", "[search]") {
    Dataset ds = testing::random_dataset(400, 4, 20, 6, 8);
    GraphIndex g = build(ds, BuildParams::acorn_gamma(8, 40, 4, 16, 2));
    CostRouter router(4, CostRouter::Source::kExact);
    HybridQuery q;
    q.vector = {0.1f, 0.2f, 0.3f, 0.4f};
    q.predicate = Predicate::equals(0, 3);
    SearchReport r = hybrid_search(g, q, {10, 40, Strategy::kCompressed2Hop}, &router);
    CHECK(r.prefiltered());
    CHECK(r.selectivity_estimate < 0.25);
    CHECK(r.ids == testing::brute_force_knn(ds, q.vector.data(), q.predicate, 10));
    q.predicate = Predicate::always_true();
    CHECK(!hybrid_search(g, q, {10, 40, Strategy::kCompressed2Hop}, &router).prefiltered());
}

TEST_CASE("hybrid search rejects bad arguments", "[search]") {
    Dataset ds = testing::random_dataset(50, 4, 3, 6, 8);
    GraphIndex g = build(ds, BuildParams::hnsw(4, 20, 2));
    HybridQuery q;
    q.vector = {0, 0, 0, 0};
    auto code = [&](SearchParams sp) {
        try {
            hybrid_search(g, q, sp);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::kIoError;
    };
    CHECK(code({0, 10, Strategy::kFilterOnly}) == ErrorCode::kInvalidK);
    CHECK(code({11, 10, Strategy::kFilterOnly}) == ErrorCode::kInvalidK);
    CHECK(code({5, 10, Strategy::kCompressed2Hop}) == ErrorCode::kInvalidArgument);
    q.vector = {0, 0, 0};
    CHECK(code({5, 10, Strategy::kFilterOnly}) == ErrorCode::kDimensionMismatch);
    q.vector = {0, 0, 0, 0};
    q.predicate = Predicate::equals(1, 2);
    CHECK(code({5, 10, Strategy::kFilterOnly}) == ErrorCode::kSchemaMismatch);
}
