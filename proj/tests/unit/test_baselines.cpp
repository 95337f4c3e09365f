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

#include <random>

#include "acorn/baselines.h"
#include "acorn/error.h"
#include "test_util.h"

using namespace acorn;

namespace {

HybridQuery
random_query(std::mt19937_64& rng, std::size_t dim, Predicate p) {
    std::uniform_real_distribution<float> coord(-1.0f, 1.0f);
    HybridQuery q;
    for (std::size_t d = 0; d < dim; ++d) {
        q.vector.push_back(coord(rng));
    }
    q.predicate = std::move(p);
    return q;
}

std::vector<NodeId>
ids(const std::vector<Neighbor>& r) {
    std::vector<NodeId> out;
    for (const Neighbor& nb : r) {
        out.push_back(nb.id);
    }
    return out;
}

ErrorCode
code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::kIoError;
}

}  // namespace

TEST_CASE("pre-filtering equals brute force", "[baselines]") {
    Dataset ds = testing::random_dataset(900, 7, 6, 12, 31);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 30; ++i) {
        Predicate p = i % 3 == 0   ? Predicate::contains(1, {static_cast<std::uint32_t>(rng() % 12)})
                      : i % 3 == 1 ? Predicate::equals(0, static_cast<std::int64_t>(rng() % 6))
                                   : Predicate::always_true();
        HybridQuery q = random_query(rng, 7, p);
        q.k = 1 + rng() % 20;
        SearchCounters c;
        auto got = prefilter_search(ds, q, c);
        CHECK(ids(got) == testing::brute_force_knn(ds, q.vector.data(), p, q.k));
        CHECK(c.predicate_evaluations == ds.size());
    }
    HybridQuery none = random_query(rng, 7, Predicate::always_false());
    SearchCounters c;
    CHECK(prefilter_search(ds, none, c).empty());
}

TEST_CASE("post-filter fan-out is ceil(K / s) capped at n", "[baselines]") {
    CHECK(postfilter_fanout(10, 0.1, 1000) == 100);
    CHECK(postfilter_fanout(10, 0.3, 1000) == 34);
    CHECK(postfilter_fanout(10, 1.0, 1000) == 10);
    CHECK(postfilter_fanout(10, 0.001, 1000) == 1000);
    CHECK(postfilter_fanout(7, 1.0 / 12.0, 1000) == 84);
}

TEST_CASE("post-filtering returns passers from a widened search", "[baselines]") {
    Dataset ds = testing::random_dataset(1500, 6, 4, 6, 32);
    GraphIndex g = build(ds, BuildParams::hnsw(8, 60, 4));
    std::mt19937_64 rng(2);
    double hits = 0;
    double total = 0;
    for (int i = 0; i < 30; ++i) {
        Predicate p = Predicate::equals(0, static_cast<std::int64_t>(rng() % 4));
        HybridQuery q = random_query(rng, 6, p);
        SearchCounters c;
        auto got = postfilter_search(g, q, 40, exact_selectivity(p, ds).value, c);
        CHECK(got.size() <= q.k);
        for (const Neighbor& nb : got) {
            CHECK(evaluate(p, ds.attributes().tuple(nb.id)));
        }
        auto truth = testing::brute_force_knn(ds, q.vector.data(), p, q.k);
        for (NodeId v : ids(got)) {
            hits += std::find(truth.begin(), truth.end(), v) != truth.end() ? 1 : 0;
        }
        total += static_cast<double>(truth.size());
    }
    CHECK(hits / total > 0.8);
    HybridQuery q = random_query(rng, 6, Predicate::always_true());
    SearchCounters c;
    CHECK(code_of([&] { postfilter_search(g, q, 40, 0.0, c); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("the router compares selectivity against 1/gamma", "[baselines]") {
    Dataset ds = testing::random_dataset(2000, 3, 10, 6, 33);
    CostRouter exact(12, CostRouter::Source::kExact);
    CHECK(exact.threshold() == Catch::Approx(1.0 / 12.0));
    CHECK(exact.decide(1.0 / 12.0) == Route::kPrefilter);
    CHECK(exact.decide(0.09) == Route::kGraphSearch);
    Predicate p = Predicate::equals(0, 3);
    CHECK(exact.estimate(p, ds) == Catch::Approx(exact_selectivity(p, ds).value));
    CostRouter sampled(12, CostRouter::Source::kSampled, 1000, 5);
    CHECK(std::abs(sampled.estimate(p, ds) - exact.estimate(p, ds)) < 0.04);
    CHECK(sampled.estimate(p, ds) == sampled.estimate(p, ds));
    HybridQuery q;
    q.vector = {0, 0, 0};
    q.predicate = Predicate::always_true();
    CHECK(route(exact, q, ds) == Route::kGraphSearch);
    q.predicate = Predicate::always_false();
    CHECK(route(exact, q, ds) == Route::kPrefilter);
}

TEST_CASE("oracle partitions search only the matching label", "[baselines]") {
    Dataset ds = testing::random_dataset(1200, 5, 5, 6, 34);
    std::vector<Predicate> labels;
    for (std::int64_t l = 0; l < 5; ++l) {
        labels.push_back(Predicate::equals(0, l));
    }
    OraclePartitionSet ops = oracle_build(ds, labels, BuildParams::hnsw(8, 60, 7));
    CHECK(ops.partitions().size() == 5);
    std::size_t covered = 0;
    for (const auto& [label, part] : ops.partitions()) {
        covered += part.ids.size();
        CHECK(part.ids == passing_ids(Predicate::equals(0, label), ds));
    }
    CHECK(covered == ds.size());

    std::mt19937_64 rng(3);
    double hits = 0;
    double total = 0;
    for (int i = 0; i < 30; ++i) {
        Predicate p = labels[rng() % 5];
        HybridQuery q = random_query(rng, 5, p);
        SearchCounters c;
        auto got = oracle_search(ops, q, 10, 60, c);
        auto truth = testing::brute_force_knn(ds, q.vector.data(), p, 10);
        for (NodeId v : ids(got)) {
            CHECK(evaluate(p, ds.attributes().tuple(v)));
            hits += std::find(truth.begin(), truth.end(), v) != truth.end() ? 1 : 0;
        }
        total += 10;
    }
    CHECK(hits / total > 0.95);

    HybridQuery q = random_query(rng, 5, Predicate::equals(0, 9));
    SearchCounters c;
    CHECK(code_of([&] { oracle_search(ops, q, 10, 60, c); }) == ErrorCode::kUnknownLabel);
    q.predicate = Predicate::contains(1, {0});
    CHECK(code_of([&] { oracle_search(ops, q, 10, 60, c); }) == ErrorCode::kUnknownLabel);
    std::vector<Predicate> mixed = {Predicate::equals(0, 1), Predicate::contains(1, {0})};
    CHECK(code_of([&] { oracle_build(ds, mixed, BuildParams::hnsw(8, 60, 7)); }) ==
          ErrorCode::kUnsupportedSchema);
    std::vector<Predicate> keyword_attr = {Predicate::equals(1, 1)};
    CHECK(code_of([&] { oracle_build(ds, keyword_attr, BuildParams::hnsw(8, 60, 7)); }) ==
          ErrorCode::kUnsupportedSchema);
}
