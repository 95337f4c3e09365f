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

#include <cmath>
#include <cstddef>
#include <span>

namespace acorn {

enum class Metric {
    kL2,            // ranked by squared L2, reported as L2
    kInnerProduct,  // ranked and reported as -<x, y>
};

/// Squared L2. Eight independent accumulators so the compiler can vectorize
/// without reassociating; the summation order is fixed and deterministic.
inline float
l2_sqr(const float* a, const float* b, std::size_t dim) {
    float acc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
    std::size_t i = 0;
    for (; i + 8 <= dim; i += 8) {
        for (std::size_t j = 0; j < 8; ++j) {
            float diff = a[i + j] - b[i + j];
            acc[j] += diff * diff;
        }
    }
    float tail = 0;
    for (; i < dim; ++i) {
        float diff = a[i] - b[i];
        tail += diff * diff;
    }
    return ((acc[0] + acc[1]) + (acc[2] + acc[3])) + ((acc[4] + acc[5]) + (acc[6] + acc[7])) +
           tail;
}

inline float
inner_product(const float* a, const float* b, std::size_t dim) {
    float acc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
    std::size_t i = 0;
    for (; i + 8 <= dim; i += 8) {
        for (std::size_t j = 0; j < 8; ++j) {
            acc[j] += a[i + j] * b[i + j];
        }
    }
    float tail = 0;
    for (; i < dim; ++i) {
        tail += a[i] * b[i];
    }
    return ((acc[0] + acc[1]) + (acc[2] + acc[3])) + ((acc[4] + acc[5]) + (acc[6] + acc[7])) +
           tail;
}

/// Ranking distance: smaller is closer.
inline float
rank_distance(Metric metric, const float* a, const float* b, std::size_t dim) {
    return metric == Metric::kL2 ? l2_sqr(a, b, dim) : -inner_product(a, b, dim);
}

/// Maps a ranking distance to the value reported to callers.
inline float
reported_distance(Metric metric, float rank) {
    return metric == Metric::kL2 ? std::sqrt(rank) : rank;
}

}  // namespace acorn
