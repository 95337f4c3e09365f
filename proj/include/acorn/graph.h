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
#include <random>
#include <span>
#include <string>
#include <vector>

#include "acorn/dataset.h"

namespace acorn {

enum class Variant : std::uint32_t {
    kHnsw = 0,
    kAcornGamma = 1,
    kAcorn1 = 2,
};

enum class PruneStrategy : std::uint32_t {
    kAcornMBeta = 0,
    kRngMetadataAware = 1,
    kHnswMetadataBlind = 2,
    kNone = 3,
};

std::string_view
variant_name(Variant v);
Variant
parse_variant(std::string_view name);
std::string_view
prune_strategy_name(PruneStrategy s);
PruneStrategy
parse_prune_strategy(std::string_view name);

inline constexpr std::uint32_t kUnboundedMBeta = 0xFFFFFFFFu;

struct BuildParams {
    Variant variant = Variant::kAcornGamma;
    std::uint32_t M = 32;
    std::uint32_t efc = 40;
    std::uint32_t gamma = 12;
    /// Compression threshold; kUnboundedMBeta (or any value >= M*gamma) keeps
    /// every candidate.
    std::uint32_t m_beta = 64;
    std::uint64_t seed = 0;
    /// Applied to levels below `compressed_levels` once all nodes are inserted.
    /// Only meaningful for kAcornGamma.
    PruneStrategy prune = PruneStrategy::kAcornMBeta;
    std::uint32_t compressed_levels = 1;
    /// Integer attribute holding the label for kRngMetadataAware.
    std::uint32_t label_attr = 0;

    /// Throws kInvalidArgument when a field violates the variant's constraints.
    void
    validate() const;

    double
    m_l() const;

    static BuildParams
    hnsw(std::uint32_t M, std::uint32_t efc, std::uint64_t seed);
    static BuildParams
    acorn_gamma(std::uint32_t M,
                std::uint32_t efc,
                std::uint32_t gamma,
                std::uint32_t m_beta,
                std::uint64_t seed);
    static BuildParams
    acorn1(std::uint32_t M, std::uint32_t efc, std::uint64_t seed);
};

/// Level assignment: floor(-ln(u) * m_L) with u uniform in (0, 1).
class LevelSampler {
public:
    LevelSampler(double m_l, std::uint64_t seed) : m_l_(m_l), rng_(seed) {
    }

    std::uint32_t
    next();

    /// Level for a given uniform draw; exposed for boundary tests.
    static std::uint32_t
    level_for(double u, double m_l);

    double
    m_l() const {
        return m_l_;
    }

private:
    double m_l_;
    std::mt19937_64 rng_;
};

inline constexpr NodeId kNoNode = 0xFFFFFFFFu;

/// Multi-level adjacency. Node v is present on levels 0..node_level(v); each
/// (node, level) slot owns a fixed-capacity ordered neighbor list.
class GraphIndex {
public:
    GraphIndex() = default;
    GraphIndex(Dataset dataset, BuildParams params, std::vector<std::uint32_t> node_levels);

    const BuildParams&
    params() const {
        return params_;
    }

    const Dataset&
    dataset() const {
        return dataset_;
    }

    std::size_t
    size() const {
        return node_levels_.size();
    }

    std::uint32_t
    max_level() const {
        return max_level_;
    }

    NodeId
    entry_point() const {
        return entry_point_;
    }

    void
    set_entry_point(NodeId v);

    std::uint32_t
    node_level(NodeId v) const {
        return node_levels_[v];
    }

    const std::vector<std::uint32_t>&
    node_levels() const {
        return node_levels_;
    }

    std::size_t
    num_levels() const {
        return levels_.size();
    }

    bool
    contains(NodeId v, std::uint32_t l) const {
        return v < node_levels_.size() && l <= node_levels_[v];
    }

    /// Degree cap for a level: 2M at level 0 and M above for HNSW and ACORN-1,
    /// M * gamma everywhere for ACORN-gamma.
    std::uint32_t
    level_cap(std::uint32_t l) const;

    /// Prefix length traversal reads during construction and unfiltered search.
    std::uint32_t
    traversal_bound(std::uint32_t l) const;

    /// Checked read. Throws kUnknownNode if v is not on level l.
    std::span<const NodeId>
    neighbors(NodeId v, std::uint32_t l) const;

    /// Storage slot of v on level l (v itself on level 0).
    std::size_t
    slot(NodeId v, std::uint32_t l) const {
        return l == 0 ? v : levels_[l].slot_of[v];
    }

    /// Unchecked read for hot loops.
    std::span<const NodeId>
    list(NodeId v, std::uint32_t l) const {
        const Level& lv = levels_[l];
        std::size_t s = l == 0 ? v : lv.slot_of[v];
        return {lv.ids.data() + s * lv.stride, lv.count[s]};
    }

    /// Replaces v's list. Throws kUnknownNode, kSelfLoop, kDegreeOverflow,
    /// kInvalidArgument (out-of-range or duplicate id).
    void
    set_neighbors(NodeId v, std::uint32_t l, std::span<const NodeId> neighbors);

    /// Unchecked replacement used by builders that maintain the invariants.
    void
    assign(NodeId v, std::uint32_t l, std::span<const NodeId> neighbors) {
        Level& lv = levels_[l];
        std::size_t s = l == 0 ? v : lv.slot_of[v];
        std::copy(neighbors.begin(), neighbors.end(), lv.ids.begin() + s * lv.stride);
        lv.count[s] = static_cast<std::uint32_t>(neighbors.size());
    }

    /// Nodes present on level l, ascending.
    std::span<const NodeId>
    level_nodes(std::uint32_t l) const {
        return levels_[l].nodes;
    }

    /// Full structural audit. Throws kInvariantViolation with detail naming the
    /// first violated invariant.
    void
    validate() const;

    std::uint64_t
    total_edges() const;

    /// Mean list length per level.
    std::vector<double>
    mean_degrees() const;

    /// Same structure with a different params record (used when a build phase
    /// changes the declared variant or pruning).
    void
    set_params(const BuildParams& params) {
        params_ = params;
    }

    /// Binds another dataset of the same size and dimension (for loaded indices).
    void
    bind_dataset(Dataset dataset);

    /// Shrinks per-slot storage to the longest list on each level. Lists may
    /// not grow past that length afterwards.
    void
    compact();

    /// Per-slot storage per level.
    std::uint32_t
    stride(std::uint32_t l) const {
        return levels_[l].stride;
    }

    bool
    operator==(const GraphIndex& other) const;

private:
    struct Level {
        std::uint32_t stride = 0;  // storage per slot, >= longest list
        std::vector<NodeId> nodes;
        std::vector<NodeId> slot_of;  // empty at level 0 (slot == node id)
        std::vector<NodeId> ids;
        std::vector<std::uint32_t> count;
    };

    BuildParams params_;
    Dataset dataset_;
    std::vector<std::uint32_t> node_levels_;
    std::vector<Level> levels_;
    std::uint32_t max_level_ = 0;
    NodeId entry_point_ = kNoNode;
};

}  // namespace acorn
