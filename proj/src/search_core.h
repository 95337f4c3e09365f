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

#include <algorithm>
#include <limits>
#include <queue>
#include <vector>

#include "acorn/search.h"

namespace acorn::detail {

struct FarFirst {
    bool
    operator()(const Neighbor& a, const Neighbor& b) const {
        return a < b;
    }
};

struct NearFirst {
    bool
    operator()(const Neighbor& a, const Neighbor& b) const {
        return b < a;
    }
};

/// Greedy beam search shared by construction and queries. `expand(c, out)`
/// fills `out` with the neighborhood to consider for c. The entry enters W
/// with key +inf when `entry_passes` is false so it never bounds the beam.
template <class Expand>
void
beam_search(const Dataset& ds,
            const float* query,
            NodeId entry,
            bool entry_passes,
            std::size_t ef,
            VisitedTable& visited,
            SearchCounters& counters,
            Expand&& expand,
            std::vector<Neighbor>& result) {
    constexpr float kInf = std::numeric_limits<float>::infinity();
    std::priority_queue<Neighbor, std::vector<Neighbor>, NearFirst> candidates;
    std::priority_queue<Neighbor, std::vector<Neighbor>, FarFirst> found;
    std::vector<NodeId> scratch;

    visited.reset(ds.size());
    visited.visit(entry);
    ++counters.nodes_visited;
    float entry_dist = ds.distance_to(query, entry);
    ++counters.distance_computations;
    candidates.push({entry, entry_dist});
    found.push({entry, entry_passes ? entry_dist : kInf});

    while (!candidates.empty()) {
        Neighbor c = candidates.top();
        if (c.distance > found.top().distance && found.size() >= ef) {
            break;
        }
        candidates.pop();
        ++counters.hops;
        scratch.clear();
        expand(c.id, scratch);
        for (NodeId v : scratch) {
            if (!visited.visit(v)) {
                continue;
            }
            ++counters.nodes_visited;
            float d = ds.distance_to(query, v);
            ++counters.distance_computations;
            if (found.size() < ef || d < found.top().distance) {
                candidates.push({v, d});
                found.push({v, d});
                if (found.size() > ef) {
                    found.pop();
                }
            }
        }
    }

    result.resize(found.size());
    for (std::size_t i = found.size(); i-- > 0;) {
        Neighbor f = found.top();
        found.pop();
        if (f.distance == kInf && f.id == entry && !entry_passes) {
            f.distance = entry_dist;
        }
        result[i] = f;
    }
}

}  // namespace acorn::detail
