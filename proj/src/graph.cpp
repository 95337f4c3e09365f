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
#include "acorn/graph.h"

#include <algorithm>
#include <cmath>

#include "acorn/error.h"
#include "acorn/random.h"

namespace acorn {

std::string_view
variant_name(Variant v) {
    switch (v) {
        case Variant::kHnsw:
            return "hnsw";
        case Variant::kAcornGamma:
            return "acorn-gamma";
        case Variant::kAcorn1:
            return "acorn-1";
    }
    return "?";
}

Variant
parse_variant(std::string_view name) {
    for (Variant v : {Variant::kHnsw, Variant::kAcornGamma, Variant::kAcorn1}) {
        if (variant_name(v) == name) {
            return v;
        }
    }
    if (name == "HNSW") {
        return Variant::kHnsw;
    }
    if (name == "ACORN_GAMMA") {
        return Variant::kAcornGamma;
    }
    if (name == "ACORN_1") {
        return Variant::kAcorn1;
    }
    throw Error(ErrorCode::kInvalidArgument, "unknown variant '" + std::string(name) + "'");
}

std::string_view
prune_strategy_name(PruneStrategy s) {
    switch (s) {
        case PruneStrategy::kAcornMBeta:
            return "acorn-mbeta";
        case PruneStrategy::kRngMetadataAware:
            return "rng-metadata-aware";
        case PruneStrategy::kHnswMetadataBlind:
            return "hnsw-metadata-blind";
        case PruneStrategy::kNone:
            return "none";
    }
    return "?";
}

PruneStrategy
parse_prune_strategy(std::string_view name) {
    for (PruneStrategy s : {PruneStrategy::kAcornMBeta, PruneStrategy::kRngMetadataAware,
                            PruneStrategy::kHnswMetadataBlind, PruneStrategy::kNone}) {
        if (prune_strategy_name(s) == name) {
            return s;
        }
    }
    if (name == "ACORN_MBETA") {
        return PruneStrategy::kAcornMBeta;
    }
    if (name == "RNG_METADATA_AWARE") {
        return PruneStrategy::kRngMetadataAware;
    }
    if (name == "HNSW_METADATA_BLIND") {
        return PruneStrategy::kHnswMetadataBlind;
    }
    if (name == "NONE") {
        return PruneStrategy::kNone;
    }
    throw Error(ErrorCode::kInvalidArgument, "unknown prune strategy '" + std::string(name) + "'");
}

void
BuildParams::validate() const {
    auto fail = [](const std::string& msg) { throw Error(ErrorCode::kInvalidArgument, msg); };
    if (M < 2) {
        fail("M must be at least 2");
    }
    if (efc < 1) {
        fail("efc must be at least 1");
    }
    if (gamma < 1) {
        fail("gamma must be at least 1");
    }
    if (static_cast<std::uint64_t>(M) * gamma > 0xFFFFFFu) {
        fail("M * gamma is too large");
    }
    switch (variant) {
        case Variant::kHnsw:
            if (gamma != 1) {
                fail("hnsw requires gamma = 1");
            }
            break;
        case Variant::kAcorn1:
            if (gamma != 1 || m_beta != M) {
                fail("acorn-1 requires gamma = 1 and m_beta = M");
            }
            break;
        case Variant::kAcornGamma:
            if (m_beta != kUnboundedMBeta && m_beta > M * gamma) {
                fail("m_beta must lie in [0, M * gamma]");
            }
            break;
    }
}

double
BuildParams::m_l() const {
    return 1.0 / std::log(static_cast<double>(M));
}

BuildParams
BuildParams::hnsw(std::uint32_t M, std::uint32_t efc, std::uint64_t seed) {
    BuildParams p;
    p.variant = Variant::kHnsw;
    p.M = M;
    p.efc = efc;
    p.gamma = 1;
    p.m_beta = M;
    p.seed = seed;
    p.prune = PruneStrategy::kNone;
    p.compressed_levels = 0;
    return p;
}

BuildParams
BuildParams::acorn_gamma(std::uint32_t M,
                         std::uint32_t efc,
                         std::uint32_t gamma,
                         std::uint32_t m_beta,
                         std::uint64_t seed) {
    BuildParams p;
    p.variant = Variant::kAcornGamma;
    p.M = M;
    p.efc = efc;
    p.gamma = gamma;
    p.m_beta = m_beta;
    p.seed = seed;
    p.prune = PruneStrategy::kAcornMBeta;
    p.compressed_levels = 1;
    return p;
}

BuildParams
BuildParams::acorn1(std::uint32_t M, std::uint32_t efc, std::uint64_t seed) {
    BuildParams p;
    p.variant = Variant::kAcorn1;
    p.M = M;
    p.efc = efc;
    p.gamma = 1;
    p.m_beta = M;
    p.seed = seed;
    p.prune = PruneStrategy::kNone;
    p.compressed_levels = 0;
    return p;
}

std::uint32_t
LevelSampler::level_for(double u, double m_l) {
    double level = std::floor(-std::log(u) * m_l);
    if (!(level >= 0.0)) {
        return 0;
    }
    return static_cast<std::uint32_t>(std::min(level, 64.0));
}

std::uint32_t
LevelSampler::next() {
    return level_for(open_unit(rng_), m_l_);
}

GraphIndex::GraphIndex(Dataset dataset, BuildParams params, std::vector<std::uint32_t> node_levels)
    : params_(params), dataset_(std::move(dataset)), node_levels_(std::move(node_levels)) {
    params_.validate();
    if (dataset_.dim() != 0 && dataset_.size() != node_levels_.size()) {
        throw Error(ErrorCode::kInvalidArgument, "node level count does not match dataset size");
    }
    const std::size_t n = node_levels_.size();
    for (NodeId v = 0; v < n; ++v) {
        if (node_levels_[v] > max_level_ || entry_point_ == kNoNode) {
            max_level_ = std::max(max_level_, node_levels_[v]);
            entry_point_ = v;
        }
    }
    levels_.resize(n == 0 ? 1 : max_level_ + 1);
    for (std::uint32_t l = 0; l < levels_.size(); ++l) {
        Level& lv = levels_[l];
        lv.stride = level_cap(l);
        if (l > 0) {
            lv.slot_of.assign(n, kNoNode);
        }
        for (NodeId v = 0; v < n; ++v) {
            if (node_levels_[v] >= l) {
                if (l > 0) {
                    lv.slot_of[v] = static_cast<NodeId>(lv.nodes.size());
                }
                lv.nodes.push_back(v);
            }
        }
        lv.ids.assign(lv.nodes.size() * lv.stride, 0);
        lv.count.assign(lv.nodes.size(), 0);
    }
}

void
GraphIndex::set_entry_point(NodeId v) {
    if (v >= size() || node_levels_[v] != max_level_) {
        throw Error(ErrorCode::kInvalidArgument, "entry point must sit on the top level");
    }
    entry_point_ = v;
}

std::uint32_t
GraphIndex::level_cap(std::uint32_t l) const {
    switch (params_.variant) {
        case Variant::kHnsw:
            return l == 0 ? 2 * params_.M : params_.M;
        case Variant::kAcornGamma:
            return params_.M * params_.gamma;
        case Variant::kAcorn1:
            return l == 0 ? 2 * params_.M : params_.M;
    }
    return params_.M;
}

std::uint32_t
GraphIndex::traversal_bound(std::uint32_t l) const {
    return params_.variant == Variant::kAcornGamma ? params_.M : level_cap(l);
}

std::span<const NodeId>
GraphIndex::neighbors(NodeId v, std::uint32_t l) const {
    if (!contains(v, l)) {
        throw Error(ErrorCode::kUnknownNode,
                    "node " + std::to_string(v) + " is not on level " + std::to_string(l));
    }
    return list(v, l);
}

void
GraphIndex::set_neighbors(NodeId v, std::uint32_t l, std::span<const NodeId> neighbors) {
    if (!contains(v, l)) {
        throw Error(ErrorCode::kUnknownNode,
                    "node " + std::to_string(v) + " is not on level " + std::to_string(l));
    }
    if (neighbors.size() > level_cap(l) || neighbors.size() > levels_[l].stride) {
        throw Error(ErrorCode::kDegreeOverflow,
                    "list of " + std::to_string(neighbors.size()) + " exceeds cap " +
                        std::to_string(std::min(level_cap(l), levels_[l].stride)));
    }
    std::vector<NodeId> seen(neighbors.begin(), neighbors.end());
    std::sort(seen.begin(), seen.end());
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (seen[i] == v) {
            throw Error(ErrorCode::kSelfLoop, "node " + std::to_string(v) + " lists itself");
        }
        if (!contains(seen[i], l)) {
            throw Error(ErrorCode::kInvalidArgument,
                        "neighbor " + std::to_string(seen[i]) + " is not on level " +
                            std::to_string(l));
        }
        if (i > 0 && seen[i] == seen[i - 1]) {
            throw Error(ErrorCode::kInvalidArgument,
                        "neighbor " + std::to_string(seen[i]) + " listed twice");
        }
    }
    assign(v, l, neighbors);
}

void
GraphIndex::validate() const {
    auto fail = [](const std::string& name, const std::string& msg) {
        throw Error(ErrorCode::kInvariantViolation, name + ": " + msg, name);
    };
    const std::size_t n = size();
    if (dataset_.dim() != 0 && dataset_.size() != n) {
        fail("node count", "index has " + std::to_string(n) + " nodes, dataset " +
                               std::to_string(dataset_.size()));
    }
    if (n == 0) {
        return;
    }
    std::uint32_t top = *std::max_element(node_levels_.begin(), node_levels_.end());
    if (top != max_level_ || levels_.size() != max_level_ + 1) {
        fail("max level", "declared max level disagrees with node levels");
    }
    if (entry_point_ >= n || node_levels_[entry_point_] != max_level_) {
        fail("entry point", "entry point is not a node on the top level");
    }
    std::vector<std::uint64_t> mark(n, 0);
    std::uint64_t stamp = 0;
    for (std::uint32_t l = 0; l < levels_.size(); ++l) {
        const std::uint32_t cap = level_cap(l);
        for (NodeId v : levels_[l].nodes) {
            auto nb = list(v, l);
            if (nb.size() > cap) {
                fail("degree cap", "node " + std::to_string(v) + " has " +
                                       std::to_string(nb.size()) + " neighbors on level " +
                                       std::to_string(l) + ", cap " + std::to_string(cap));
            }
            ++stamp;
            for (NodeId u : nb) {
                if (u >= n || node_levels_[u] < l) {
                    fail("dangling edge", "node " + std::to_string(v) + " points to " +
                                              std::to_string(u) + " on level " +
                                              std::to_string(l));
                }
                if (u == v) {
                    fail("self loop", "node " + std::to_string(v) + " on level " +
                                          std::to_string(l));
                }
                if (mark[u] == stamp) {
                    fail("duplicate edge", "node " + std::to_string(v) + " lists " +
                                               std::to_string(u) + " twice");
                }
                mark[u] = stamp;
            }
        }
    }
}

std::uint64_t
GraphIndex::total_edges() const {
    std::uint64_t total = 0;
    for (const Level& lv : levels_) {
        for (std::uint32_t c : lv.count) {
            total += c;
        }
    }
    return total;
}

std::vector<double>
GraphIndex::mean_degrees() const {
    std::vector<double> out;
    for (const Level& lv : levels_) {
        std::uint64_t total = 0;
        for (std::uint32_t c : lv.count) {
            total += c;
        }
        out.push_back(lv.nodes.empty() ? 0.0
                                       : static_cast<double>(total) /
                                             static_cast<double>(lv.nodes.size()));
    }
    return out;
}

void
GraphIndex::bind_dataset(Dataset dataset) {
    if (dataset.size() != size()) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "dataset has " + std::to_string(dataset.size()) + " rows, index has " +
                        std::to_string(size()) + " nodes");
    }
    dataset_ = std::move(dataset);
}

void
GraphIndex::compact() {
    for (Level& lv : levels_) {
        std::uint32_t longest = 0;
        for (std::uint32_t c : lv.count) {
            longest = std::max(longest, c);
        }
        if (longest == lv.stride) {
            continue;
        }
        std::vector<NodeId> ids(lv.nodes.size() * longest);
        for (std::size_t s = 0; s < lv.nodes.size(); ++s) {
            std::copy_n(lv.ids.begin() + s * lv.stride, lv.count[s], ids.begin() + s * longest);
        }
        lv.ids = std::move(ids);
        lv.stride = longest;
    }
}

bool
GraphIndex::operator==(const GraphIndex& other) const {
    const BuildParams& a = params_;
    const BuildParams& b = other.params_;
    if (a.variant != b.variant || a.M != b.M || a.efc != b.efc || a.gamma != b.gamma ||
        a.m_beta != b.m_beta || a.seed != b.seed || a.prune != b.prune ||
        a.compressed_levels != b.compressed_levels) {
        return false;
    }
    if (node_levels_ != other.node_levels_ || max_level_ != other.max_level_ ||
        entry_point_ != other.entry_point_ || levels_.size() != other.levels_.size()) {
        return false;
    }
    for (std::uint32_t l = 0; l < levels_.size(); ++l) {
        for (NodeId v : levels_[l].nodes) {
            auto x = list(v, l);
            auto y = other.list(v, l);
            if (!std::equal(x.begin(), x.end(), y.begin(), y.end())) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace acorn
