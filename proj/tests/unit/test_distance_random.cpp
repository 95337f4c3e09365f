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
#include <set>

#include "acorn/distance.h"
#include "acorn/random.h"
#include "test_util.h"

using namespace acorn;

TEST_CASE("squared L2 agrees with a double-precision sum", "[distance]") {
    std::mt19937_64 rng(3);
    std::normal_distribution<float> g(0.0f, 1.0f);
    for (std::size_t dim : {1u, 3u, 7u, 8u, 9u, 16u, 31u, 128u}) {
        std::vector<float> a(dim), b(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            a[i] = g(rng);
            b[i] = g(rng);
        }
        double expected = testing::naive_l2_sqr(a.data(), b.data(), dim);
        CHECK(l2_sqr(a.data(), b.data(), dim) == Catch::Approx(expected).epsilon(1e-5));
        CHECK(l2_sqr(a.data(), a.data(), dim) == 0.0f);
    }
}

TEST_CASE("inner product ranks larger products closer", "[distance]") {
    std::vector<float> q{1, 2, 3};
    std::vector<float> near{1, 2, 3};
    std::vector<float> far{0, 0, 1};
    CHECK(inner_product(q.data(), near.data(), 3) == 14.0f);
    CHECK(rank_distance(Metric::kInnerProduct, q.data(), near.data(), 3) <
          rank_distance(Metric::kInnerProduct, q.data(), far.data(), 3));
    CHECK(reported_distance(Metric::kL2, 9.0f) == 3.0f);
    CHECK(reported_distance(Metric::kInnerProduct, -4.0f) == -4.0f);
}

TEST_CASE("open_unit stays strictly inside (0, 1)", "[random]") {
    std::mt19937_64 rng(11);
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 100000; ++i) {
        double u = open_unit(rng);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    CHECK(lo > 0.0);
    CHECK(hi < 1.0);
}

TEST_CASE("uniform_below covers its range evenly", "[random]") {
    std::mt19937_64 rng(5);
    std::vector<int> hist(7, 0);
    const int draws = 70000;
    for (int i = 0; i < draws; ++i) {
        hist[uniform_below(rng, 7)]++;
    }
    for (int h : hist) {
        // Binomial sd is ~92; allow 5 sd.
        CHECK(std::abs(h - draws / 7) < 460);
    }
}

TEST_CASE("sample_without_replacement yields sorted distinct values", "[random]") {
    std::mt19937_64 rng(9);
    for (auto [n, k] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{10, 0}, {10, 3}, {10, 10}, {10, 15}, {1000, 999}}) {
        auto s = sample_without_replacement(n, k, rng);
        CHECK(s.size() == std::min(n, k));
        CHECK(std::is_sorted(s.begin(), s.end()));
        CHECK(std::set<std::uint32_t>(s.begin(), s.end()).size() == s.size());
        for (auto v : s) {
            CHECK(v < n);
        }
    }
}

TEST_CASE("sample_without_replacement is uniform over elements", "[random]") {
    std::mt19937_64 rng(21);
    std::vector<int> hits(20, 0);
    const int trials = 20000;
    for (int t = 0; t < trials; ++t) {
        for (auto v : sample_without_replacement(20, 5, rng)) {
            hits[v]++;
        }
    }
    // Each element is chosen with probability 1/4: mean 5000, sd ~61.
    for (int h : hits) {
        CHECK(std::abs(h - 5000) < 310);
    }
}
