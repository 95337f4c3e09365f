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
#include <functional>
#include <span>
#include <vector>

#include "acorn/graph.h"
#include "acorn/search.h"

namespace acorn {

struct BuildStats {
    double tti_seconds = 0.0;
    std::uint64_t edges_total = 0;
    /// Candidates dropped by the final pruning pass (rule-pruned plus truncated).
    std::uint64_t edges_pruned = 0;
    /// The part of edges_pruned cut by an early stop rather than by the rule.
    std::uint64_t edges_truncated = 0;
    std::uint64_t distance_computations = 0;
    std::vector<double> per_level_mean_degree;
};

/// Builds an index. For kAcornGamma every node first collects up to M*gamma
/// nearest candidates on every level; levels below compressed_levels are then
/// pruned with params.prune. Throws kEmptyDataset, kDimensionMismatch,
/// kInvalidArgument, kUnsupportedSchema.
GraphIndex
build(const Dataset& ds, const BuildParams& params, BuildStats* stats = nullptr);

GraphIndex
build_acorn1(const Dataset& ds, std::uint32_t M, std::uint32_t efc, std::uint64_t seed);

/// The uncompressed kAcornGamma candidate graph (params.prune becomes kNone).
GraphIndex
build_candidate_graph(const Dataset& ds, const BuildParams& params, BuildStats* stats = nullptr);

/// Prunes the levels below `compressed_levels` of a candidate graph with
/// `strategy` and returns the result; `candidates` is left untouched. Lists of
/// a candidate graph must be ordered by distance from their owner.
GraphIndex
compress(const GraphIndex& candidates,
         PruneStrategy strategy,
         std::uint32_t m_beta,
         std::uint32_t compressed_levels,
         BuildStats* stats = nullptr);

struct PruneOutcome {
    std::vector<NodeId> kept;
    /// Candidates dropped because they were already in the two-hop set.
    std::vector<NodeId> pruned;
    /// Candidates never examined because the budget ran out.
    std::vector<NodeId> truncated;
};

/// Keeps the first m_beta candidates verbatim. Each later candidate is dropped
/// if it is in H, otherwise kept with its `two_hop(c)` added to H; iteration
/// stops once |H| + kept exceeds `cap`.
PruneOutcome
prune_acorn(std::span<const NodeId> candidates,
            std::size_t m_beta,
            std::size_t cap,
            const std::function<std::span<const NodeId>(NodeId)>& two_hop);

/// Keeps c iff dist(c, v) < dist(c, a) for every kept a, at most M entries.
/// `candidates` carry their distance to v and are sorted ascending.
std::vector<NodeId>
prune_rng_blind(std::span<const Neighbor> candidates, std::size_t M, const Dataset& ds);

/// RNG rule applied only between candidates sharing a label (integer
/// attribute `label_attr`), at most M per label and `cap` in total. Throws
/// kUnsupportedSchema if the attribute is not an integer label.
std::vector<NodeId>
prune_rng_metadata_aware(std::span<const Neighbor> candidates,
                         std::size_t M,
                         std::size_t cap,
                         const Dataset& ds,
                         std::size_t label_attr);

/// Prefix of a candidate list that survives that node's own m_beta pruning:
/// the first m_beta entries plus the first later one.
inline std::size_t
stable_prefix(std::size_t list_size, std::size_t m_beta) {
    return m_beta >= list_size ? list_size : m_beta + 1;
}

}  // namespace acorn
