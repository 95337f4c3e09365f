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
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "acorn/graph.h"
#include "acorn/predicate.h"

namespace acorn {

enum class Strategy : std::uint32_t {
    kFilterOnly = 0,
    kCompressed2Hop = 1,
    kAcorn1FullExpansion = 2,
    kUnfiltered = 3,
};

std::string_view
strategy_name(Strategy s);
Strategy
parse_strategy(std::string_view name);

/// The look-up strategy each variant is designed for.
Strategy
default_strategy(Variant v);

struct SearchCounters {
    std::uint64_t distance_computations = 0;
    std::uint64_t predicate_evaluations = 0;
    std::uint64_t hops = 0;
    std::uint64_t nodes_visited = 0;

    SearchCounters&
    operator+=(const SearchCounters& o) {
        distance_computations += o.distance_computations;
        predicate_evaluations += o.predicate_evaluations;
        hops += o.hops;
        nodes_visited += o.nodes_visited;
        return *this;
    }
};

/// A node and its ranking distance (squared L2 for kL2).
struct Neighbor {
    NodeId id = kNoNode;
    float distance = 0.0f;

    bool
    operator<(const Neighbor& o) const {
        return distance < o.distance || (distance == o.distance && id < o.id);
    }

    bool
    operator==(const Neighbor& o) const = default;
};

struct SearchParams {
    std::size_t k = 10;
    std::size_t efs = 40;
    Strategy strategy = Strategy::kCompressed2Hop;
};

enum class Route { kGraphSearch, kPrefilter };

struct SearchReport {
    std::vector<NodeId> ids;
    std::vector<float> distances;  // reported distances (true L2 for kL2)
    SearchCounters counters;
    Route route = Route::kGraphSearch;
    double selectivity_estimate = -1.0;  // -1 when no router was consulted
    double latency_us = 0.0;

    bool
    prefiltered() const {
        return route == Route::kPrefilter;
    }
};

/// Epoch-stamped visited set; clearing is O(1) amortized.
class VisitedTable {
public:
    void
    reset(std::size_t n) {
        if (tags_.size() < n) {
            tags_.assign(n, 0);
            epoch_ = 0;
        }
        if (++epoch_ == 0) {
            std::fill(tags_.begin(), tags_.end(), 0);
            epoch_ = 1;
        }
    }

    /// Marks v; returns false if it was already marked.
    bool
    visit(NodeId v) {
        if (tags_[v] == epoch_) {
            return false;
        }
        tags_[v] = epoch_;
        return true;
    }

    bool
    visited(NodeId v) const {
        return tags_[v] == epoch_;
    }

private:
    std::vector<std::uint32_t> tags_;
    std::uint32_t epoch_ = 0;
};

/// Predicate-filtered neighborhood of c on level l, at most M nodes (the level
/// cap for an HNSW index). Pure: does not consult any visited set.
std::vector<NodeId>
get_neighbors(const GraphIndex& index,
              NodeId c,
              std::uint32_t l,
              const Predicate& p,
              Strategy strategy,
              SearchCounters& counters);

/// One level of filtered greedy beam search from `entry`. Returns up to ef
/// elements ordered by distance; elements failing `p` (only ever the entry)
/// sort last and never bound the beam. Callers filter final results.
std::vector<Neighbor>
search_layer(const GraphIndex& index,
             const float* query,
             const Predicate& p,
             NodeId entry,
             std::size_t ef,
             std::uint32_t l,
             Strategy strategy,
             SearchCounters& counters);

class CostRouter;

/// Multi-level filtered search. Throws kInvalidK unless 1 <= k <= efs,
/// kDimensionMismatch, kInvalidArgument for a strategy/variant mismatch.
SearchReport
hybrid_search(const GraphIndex& index,
              const HybridQuery& q,
              const SearchParams& params,
              const CostRouter* router = nullptr);

/// Textbook HNSW search over an HNSW index.
std::vector<Neighbor>
unfiltered_search(const GraphIndex& index,
                  const float* query,
                  std::size_t k,
                  std::size_t efs,
                  SearchCounters& counters);

}  // namespace acorn
