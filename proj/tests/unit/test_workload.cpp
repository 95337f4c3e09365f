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

#include "acorn/error.h"
#include "acorn/workload.h"
#include "test_util.h"

using namespace acorn;

TEST_CASE("label workloads draw labels uniformly and query existing ones", "[workload]") {
    GeneratedWorkload w = gen_lcps(6000, 16, 12, 200, 5);
    const Dataset& ds = w.dataset;
    REQUIRE(ds.size() == 6000);
    REQUIRE(ds.dim() == 16);
    std::vector<int> count(13, 0);
    for (NodeId i = 0; i < ds.size(); ++i) {
        std::int64_t l = ds.attributes().integer(0, i);
        REQUIRE(l >= 1);
        REQUIRE(l <= 12);
        ++count[l];
    }
    // Pearson chi-square with 11 degrees of freedom; 31.26 is the 0.999 quantile.
    double chi = 0;
    const double expect = 6000.0 / 12.0;
    for (int l = 1; l <= 12; ++l) {
        chi += (count[l] - expect) * (count[l] - expect) / expect;
    }
    CHECK(chi < 31.26);
    REQUIRE(w.queries.size() == 200);
    for (const HybridQuery& q : w.queries) {
        CHECK(q.vector.size() == 16);
        CHECK(q.predicate.op() == Predicate::Op::kEquals);
        CHECK(q.predicate.lo() >= 1);
        CHECK(q.predicate.lo() <= 12);
        CHECK(q.k == 10);
    }
    CHECK_THROWS_AS(gen_lcps(100, 4, 1, 10, 5), Error);
}

TEST_CASE("generators are deterministic in the seed", "[workload]") {
    GeneratedWorkload a = gen_lcps(500, 8, 4, 20, 77);
    GeneratedWorkload b = gen_lcps(500, 8, 4, 20, 77);
    GeneratedWorkload c = gen_lcps(500, 8, 4, 20, 78);
    CHECK(std::ranges::equal(a.dataset.vectors(), b.dataset.vectors()));
    CHECK(!std::ranges::equal(a.dataset.vectors(), c.dataset.vectors()));
    for (std::size_t i = 0; i < 20; ++i) {
        CHECK(a.queries[i].vector == b.queries[i].vector);
        CHECK(a.queries[i].predicate.lo() == b.queries[i].predicate.lo());
    }
    GeneratedWorkload pos = gen_correlation(500, 8, CorrelationMode::kPositive, 10, 77);
    GeneratedWorkload neg = gen_correlation(500, 8, CorrelationMode::kNegative, 10, 77);
    CHECK(std::ranges::equal(pos.dataset.vectors(), neg.dataset.vectors()));
}

TEST_CASE("correlation modes produce the intended sign", "[workload]") {
    const std::size_t n = 8000;
    auto corr = [&](CorrelationMode m) {
        GeneratedWorkload w = gen_correlation(n, 32, m, 60, 9);
        for (const HybridQuery& q : w.queries) {
            double s = exact_selectivity(q.predicate, w.dataset).value;
            CHECK(s > 0.05);
            CHECK(s < 0.25);
        }
        return query_correlation(w.dataset, w.queries, 20, 3);
    };
    double pos = corr(CorrelationMode::kPositive);
    double none = corr(CorrelationMode::kNone);
    double neg = corr(CorrelationMode::kNegative);
    CHECK(pos > 0.0);
    CHECK(neg < 0.0);
    CHECK(std::abs(none) < std::min(pos, -neg) / 2);
}

TEST_CASE("percentile targets interpolate the anchors log-linearly", "[workload]") {
    CHECK(percentile_target(1) == Catch::Approx(0.0127));
    CHECK(percentile_target(25) == Catch::Approx(0.0485));
    CHECK(percentile_target(50) == Catch::Approx(0.1215));
    CHECK(percentile_target(75) == Catch::Approx(0.2529));
    CHECK(percentile_target(99) == Catch::Approx(0.6164));
    CHECK(percentile_target(100) == 1.0);
    CHECK(percentile_target(0) == Catch::Approx(0.0127));
    // Expected values computed with Python's math.exp / math.log.
    CHECK(percentile_target(12.5) == Catch::Approx(0.024135095470160992));
    CHECK(percentile_target(62.5) == Catch::Approx(0.17529218465179788));
    CHECK_THROWS_AS(percentile_target(101), Error);
}

TEST_CASE("selectivity sweeps hit their targets within ten percent", "[workload]") {
    const std::size_t n = 5000;
    std::mt19937_64 rng(4);
    AttributeTable t({{"day", AttributeKind::kDate}});
    for (std::int64_t d : uniform_dates(n, rng)) {
        t.append({DateValue{d}});
    }
    t.seal();
    std::vector<float> v(n * 2, 0.5f);
    Dataset ds(2, std::move(v), std::move(t));
    std::vector<double> targets = {0.0127, 0.0485, 0.1215, 0.2529, 0.6164, 1.0};
    std::vector<float> qv = {0.1f, 0.2f, 0.3f, 0.4f};
    auto sweep = gen_selectivity_sweep(ds, 0, targets, qv, 25, 6);
    REQUIRE(sweep.size() == targets.size());
    for (const auto& [target, queries] : sweep) {
        REQUIRE(queries.size() == 25);
        for (const HybridQuery& q : queries) {
            double s = exact_selectivity(q.predicate, ds).value;
            CHECK(std::abs(s - target) <= 0.1 * target);
        }
    }
    CHECK(sweep.at(1.0).front().predicate.op() == Predicate::Op::kConst);
    CHECK_THROWS_AS(gen_selectivity_sweep(ds, 1, targets, qv, 5, 6), Error);
}

TEST_CASE("ground truth equals an independent brute force", "[workload]") {
    Dataset ds = testing::random_dataset(700, 5, 4, 8, 41);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<float> coord(-1.0f, 1.0f);
    std::vector<HybridQuery> qs;
    for (int i = 0; i < 25; ++i) {
        HybridQuery q;
        for (int d = 0; d < 5; ++d) {
            q.vector.push_back(coord(rng));
        }
        q.predicate = i % 2 == 0 ? Predicate::equals(0, i % 4)
                                 : Predicate::contains(1, {static_cast<std::uint32_t>(i % 8)});
        qs.push_back(q);
    }
    GroundTruth gt = ground_truth(ds, qs, 10);
    REQUIRE(gt.results.size() == qs.size());
    for (std::size_t i = 0; i < qs.size(); ++i) {
        auto expect = testing::brute_force_knn(ds, qs[i].vector.data(), qs[i].predicate, 10);
        REQUIRE(gt.results[i].size() == expect.size());
        for (std::size_t j = 0; j < expect.size(); ++j) {
            CHECK(gt.results[i][j].id == expect[j]);
            double d = std::sqrt(testing::naive_l2_sqr(qs[i].vector.data(), ds.vector(expect[j]), 5));
            CHECK(gt.results[i][j].distance == Catch::Approx(d).epsilon(1e-5));
        }
    }
}
