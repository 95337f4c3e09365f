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

// Small fixtures and independent reference implementations shared by tests.
// The references deliberately avoid library code paths beyond data access.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "acorn/dataset.h"
#include "acorn/graph.h"
#include "acorn/predicate.h"

namespace acorn::testing {

/// Uniform vectors in [-1, 1]^dim with schema [label int in [0, labels),
/// tags keywords drawn from `words` words, two per row].
inline Dataset
random_dataset(std::size_t n, std::size_t dim, std::int64_t labels, std::size_t words, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<float> coord(-1.0f, 1.0f);
    std::vector<float> vectors(n * dim);
    for (float& x : vectors) {
        x = coord(rng);
    }
    AttributeTable table({{"label", AttributeKind::kInteger}, {"tags", AttributeKind::kKeywords}});
    for (std::size_t w = 0; w < words; ++w) {
        table.dictionary().intern("w" + std::to_string(w));
    }
    for (std::size_t i = 0; i < n; ++i) {
        KeywordSet tags;
        std::uint32_t a = static_cast<std::uint32_t>(rng() % words);
        std::uint32_t b = static_cast<std::uint32_t>(rng() % words);
        tags.codes = {std::min(a, b)};
        if (a != b) {
            tags.codes.push_back(std::max(a, b));
        }
        table.append({static_cast<std::int64_t>(rng() % labels), tags});
    }
    table.seal();
    return Dataset(dim, std::move(vectors), std::move(table));
}

inline double
naive_l2_sqr(const float* a, const float* b, std::size_t dim) {
    double s = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
        s += d * d;
    }
    return s;
}

/// Brute-force filtered K nearest: ids sorted by (double distance, id),
/// predicates evaluated through the schema-checked tuple path.
inline std::vector<NodeId>
brute_force_knn(const Dataset& ds, const float* q, const Predicate& p, std::size_t k) {
    std::vector<std::pair<double, NodeId>> all;
    for (NodeId i = 0; i < ds.size(); ++i) {
        if (evaluate(p, ds.attributes().tuple(i))) {
            all.push_back({naive_l2_sqr(q, ds.vector(i), ds.dim()), i});
        }
    }
    std::sort(all.begin(), all.end());
    std::vector<NodeId> out;
    for (std::size_t i = 0; i < all.size() && i < k; ++i) {
        out.push_back(all[i].second);
    }
    return out;
}

/// Textbook layered greedy search (ef = 1 on upper levels, efs at level 0),
/// reading full neighbor lists with an ordered set as the candidate queue.
inline std::vector<NodeId>
reference_hnsw_search(const GraphIndex& g, const float* q, std::size_t k, std::size_t efs) {
    const Dataset& ds = g.dataset();
    auto dist = [&](NodeId v) { return ds.distance_to(q, v); };
    auto layer = [&](NodeId entry, std::size_t ef, std::uint32_t l) {
        std::set<std::pair<float, NodeId>> cand;
        std::set<std::pair<float, NodeId>> found;
        std::set<NodeId> seen{entry};
        cand.insert({dist(entry), entry});
        found.insert({dist(entry), entry});
        while (!cand.empty()) {
            auto c = *cand.begin();
            cand.erase(cand.begin());
            if (c.first > std::prev(found.end())->first) {
                break;
            }
            for (NodeId e : g.neighbors(c.second, l)) {
                if (!seen.insert(e).second) {
                    continue;
                }
                float d = dist(e);
                if (found.size() < ef || d < std::prev(found.end())->first) {
                    cand.insert({d, e});
                    found.insert({d, e});
                    if (found.size() > ef) {
                        found.erase(std::prev(found.end()));
                    }
                }
            }
        }
        return found;
    };
    NodeId ep = g.entry_point();
    for (std::uint32_t l = g.max_level(); l > 0; --l) {
        ep = layer(ep, 1, l).begin()->second;
    }
    auto found = layer(ep, efs, 0);
    std::vector<NodeId> out;
    for (const auto& [d, v] : found) {
        if (out.size() == k) {
            break;
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace acorn::testing
