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
#include "acorn/build.h"

#include <algorithm>
#include <chrono>
#include <unordered_set>

#include "acorn/error.h"
#include "search_core.h"

namespace acorn {

namespace {

/// Incremental inserter. Keeps each list's distances to its owner alongside
/// the ids so reverse edges can be placed in order without recomputation.
class Inserter {
public:
    Inserter(const Dataset& ds, const BuildParams& params)
        : ds_(ds), params_(params), index_(ds, params, sample_levels(ds.size(), params)) {
        dists_.resize(index_.num_levels());
        for (std::uint32_t l = 0; l < index_.num_levels(); ++l) {
            dists_[l].resize(index_.level_nodes(l).size() * index_.stride(l));
        }
        beam_ = params.variant == Variant::kAcornGamma
                    ? std::max<std::size_t>(params.efc, std::size_t{params.M} * params.gamma)
                    : params.efc;
    }

    void
    run() {
        for (NodeId v = 0; v < ds_.size(); ++v) {
            insert(v);
        }
        if (ds_.size() > 0) {
            index_.set_entry_point(entry_);
        }
    }

    GraphIndex&
    index() {
        return index_;
    }

    std::uint64_t
    distance_computations() const {
        return counters_.distance_computations;
    }

private:
    static std::vector<std::uint32_t>
    sample_levels(std::size_t n, const BuildParams& params) {
        params.validate();
        LevelSampler sampler(params.m_l(), params.seed);
        std::vector<std::uint32_t> levels(n);
        for (auto& l : levels) {
            l = sampler.next();
        }
        return levels;
    }

    std::span<float>
    dist_list(NodeId v, std::uint32_t l) {
        std::size_t s = index_.slot(v, l);
        return {dists_[l].data() + s * index_.stride(l), index_.list(v, l).size()};
    }

    std::vector<Neighbor>
    search(const float* q, NodeId entry, std::size_t ef, std::uint32_t l) {
        const std::uint32_t bound = index_.traversal_bound(l);
        std::vector<Neighbor> result;
        detail::beam_search(
            ds_, q, entry, true, ef, visited_, counters_,
            [&](NodeId c, std::vector<NodeId>& out) {
                auto nb = index_.list(c, l);
                out.insert(out.end(), nb.begin(), nb.begin() + std::min<std::size_t>(nb.size(), bound));
            },
            result);
        return result;
    }

    /// Selection for the new node's own list.
    std::vector<Neighbor>
    select(const std::vector<Neighbor>& w, std::uint32_t l) {
        if (params_.variant == Variant::kHnsw) {
            std::vector<NodeId> kept = prune_rng_blind(w, params_.M, ds_);
            std::vector<Neighbor> out;
            std::size_t j = 0;
            for (const Neighbor& nb : w) {
                if (j < kept.size() && nb.id == kept[j]) {
                    out.push_back(nb);
                    ++j;
                }
            }
            return out;
        }
        std::size_t take = std::min<std::size_t>(w.size(), index_.level_cap(l));
        return {w.begin(), w.begin() + take};
    }

    void
    write(NodeId v, std::uint32_t l, const std::vector<Neighbor>& list) {
        std::vector<NodeId> ids;
        ids.reserve(list.size());
        for (const Neighbor& nb : list) {
            ids.push_back(nb.id);
        }
        index_.assign(v, l, ids);
        auto d = dist_list(v, l);
        for (std::size_t i = 0; i < list.size(); ++i) {
            d[i] = list[i].distance;
        }
    }

    void
    add_reverse(NodeId u, NodeId v, float dist, std::uint32_t l) {
        auto ids = index_.list(u, l);
        auto d = dist_list(u, l);
        std::vector<Neighbor> merged;
        merged.reserve(ids.size() + 1);
        for (std::size_t i = 0; i < ids.size(); ++i) {
            merged.push_back({ids[i], d[i]});
        }
        Neighbor nv{v, dist};
        merged.insert(std::upper_bound(merged.begin(), merged.end(), nv), nv);
        const std::size_t cap = index_.level_cap(l);
        if (merged.size() > cap) {
            if (params_.variant == Variant::kHnsw) {
                std::vector<NodeId> kept = prune_rng_blind(merged, cap, ds_);
                std::vector<Neighbor> out;
                std::size_t j = 0;
                for (const Neighbor& nb : merged) {
                    if (j < kept.size() && nb.id == kept[j]) {
                        out.push_back(nb);
                        ++j;
                    }
                }
                merged = std::move(out);
            } else {
                merged.resize(cap);
            }
        }
        write(u, l, merged);
    }

    void
    insert(NodeId v) {
        const std::uint32_t level = index_.node_level(v);
        if (v == 0) {
            entry_ = 0;
            top_ = level;
            return;
        }
        const float* x = ds_.vector(v);
        NodeId ep = entry_;
        for (std::uint32_t l = top_; l > level; --l) {
            ep = search(x, ep, 1, l).front().id;
        }
        for (std::uint32_t l = std::min(level, top_) + 1; l-- > 0;) {
            std::vector<Neighbor> w = search(x, ep, beam_, l);
            std::vector<Neighbor> chosen = select(w, l);
            write(v, l, chosen);
            for (const Neighbor& nb : chosen) {
                add_reverse(nb.id, v, nb.distance, l);
            }
            ep = w.front().id;
        }
        if (level > top_) {
            entry_ = v;
            top_ = level;
        }
    }

    const Dataset& ds_;
    BuildParams params_;
    GraphIndex index_;
    std::vector<std::vector<float>> dists_;
    std::size_t beam_ = 0;
    NodeId entry_ = kNoNode;
    std::uint32_t top_ = 0;
    VisitedTable visited_;
    SearchCounters counters_;
};

void
check_dataset(const Dataset& ds) {
    if (ds.size() == 0) {
        throw Error(ErrorCode::kEmptyDataset, "cannot build an index over zero vectors");
    }
    if (ds.size() >= kNoNode) {
        throw Error(ErrorCode::kInvalidArgument, "too many vectors for 32-bit node ids");
    }
}

void
check_label_attr(const Dataset& ds, std::size_t attr) {
    const AttributeSchema& schema = ds.attributes().schema();
    if (attr >= schema.size() || schema[attr].kind != AttributeKind::kInteger) {
        throw Error(ErrorCode::kUnsupportedSchema,
                    "metadata-aware pruning needs an integer label attribute at position " +
                        std::to_string(attr));
    }
}

void
fill_stats(const GraphIndex& index, BuildStats* stats) {
    stats->edges_total = index.total_edges();
    stats->per_level_mean_degree = index.mean_degrees();
}

}  // namespace

PruneOutcome
prune_acorn(std::span<const NodeId> candidates,
            std::size_t m_beta,
            std::size_t cap,
            const std::function<std::span<const NodeId>(NodeId)>& two_hop) {
    PruneOutcome out;
    const std::size_t head = std::min(m_beta, candidates.size());
    out.kept.assign(candidates.begin(), candidates.begin() + head);
    std::unordered_set<NodeId> h;
    for (std::size_t i = head; i < candidates.size(); ++i) {
        if (h.size() + out.kept.size() > cap) {
            out.truncated.assign(candidates.begin() + i, candidates.end());
            break;
        }
        NodeId c = candidates[i];
        if (h.count(c) != 0) {
            out.pruned.push_back(c);
            continue;
        }
        out.kept.push_back(c);
        for (NodeId y : two_hop(c)) {
            h.insert(y);
        }
    }
    return out;
}

std::vector<NodeId>
prune_rng_blind(std::span<const Neighbor> candidates, std::size_t M, const Dataset& ds) {
    std::vector<NodeId> kept;
    for (const Neighbor& c : candidates) {
        if (kept.size() >= M) {
            break;
        }
        bool keep = true;
        for (NodeId a : kept) {
            if (!(c.distance < ds.distance(c.id, a))) {
                keep = false;
                break;
            }
        }
        if (keep) {
            kept.push_back(c.id);
        }
    }
    return kept;
}

std::vector<NodeId>
prune_rng_metadata_aware(std::span<const Neighbor> candidates,
                         std::size_t M,
                         std::size_t cap,
                         const Dataset& ds,
                         std::size_t label_attr) {
    check_label_attr(ds, label_attr);
    const AttributeTable& table = ds.attributes();
    std::vector<NodeId> kept;
    std::vector<std::int64_t> kept_labels;
    for (const Neighbor& c : candidates) {
        if (kept.size() >= cap) {
            break;
        }
        const std::int64_t label = table.integer(label_attr, c.id);
        std::size_t same = 0;
        bool keep = true;
        for (std::size_t i = 0; i < kept.size() && keep; ++i) {
            if (kept_labels[i] != label) {
                continue;
            }
            ++same;
            if (!(c.distance < ds.distance(c.id, kept[i]))) {
                keep = false;
            }
        }
        if (keep && same < M) {
            kept.push_back(c.id);
            kept_labels.push_back(label);
        }
    }
    return kept;
}

GraphIndex
build_candidate_graph(const Dataset& ds, const BuildParams& params, BuildStats* stats) {
    if (params.variant != Variant::kAcornGamma) {
        throw Error(ErrorCode::kInvalidArgument, "candidate graphs exist for acorn-gamma only");
    }
    check_dataset(ds);
    BuildParams p = params;
    p.prune = PruneStrategy::kNone;
    auto start = std::chrono::steady_clock::now();
    Inserter inserter(ds, p);
    inserter.run();
    GraphIndex out = std::move(inserter.index());
    if (stats != nullptr) {
        stats->tti_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        stats->distance_computations = inserter.distance_computations();
        stats->edges_pruned = 0;
        stats->edges_truncated = 0;
        fill_stats(out, stats);
    }
    return out;
}

GraphIndex
compress(const GraphIndex& candidates,
         PruneStrategy strategy,
         std::uint32_t m_beta,
         std::uint32_t compressed_levels,
         BuildStats* stats) {
    BuildParams p = candidates.params();
    if (p.variant != Variant::kAcornGamma) {
        throw Error(ErrorCode::kInvalidArgument, "only acorn-gamma graphs are compressed");
    }
    p.prune = strategy;
    p.m_beta = m_beta;
    p.compressed_levels = compressed_levels;
    p.validate();
    const Dataset& ds = candidates.dataset();
    if (strategy == PruneStrategy::kRngMetadataAware) {
        check_label_attr(ds, p.label_attr);
    }
    auto start = std::chrono::steady_clock::now();
    GraphIndex out = candidates;
    out.set_params(p);
    const std::size_t cap = std::size_t{p.M} * p.gamma;
    std::uint64_t pruned = 0;
    std::uint64_t truncated = 0;
    const std::uint32_t levels =
        std::min<std::uint32_t>(compressed_levels, static_cast<std::uint32_t>(out.num_levels()));
    std::vector<Neighbor> scored;
    for (std::uint32_t l = 0; l < levels && strategy != PruneStrategy::kNone; ++l) {
        auto two_hop = [&](NodeId c) {
            auto nb = candidates.list(c, l);
            return nb.subspan(0, stable_prefix(nb.size(), m_beta));
        };
        for (NodeId v : candidates.level_nodes(l)) {
            auto cand = candidates.list(v, l);
            std::vector<NodeId> kept;
            if (strategy == PruneStrategy::kAcornMBeta) {
                PruneOutcome r = prune_acorn(cand, m_beta, cap, two_hop);
                pruned += r.pruned.size() + r.truncated.size();
                truncated += r.truncated.size();
                kept = std::move(r.kept);
            } else {
                scored.clear();
                for (NodeId c : cand) {
                    scored.push_back({c, ds.distance(v, c)});
                }
                std::sort(scored.begin(), scored.end());
                kept = strategy == PruneStrategy::kHnswMetadataBlind
                           ? prune_rng_blind(scored, p.M, ds)
                           : prune_rng_metadata_aware(scored, p.M, cap, ds, p.label_attr);
                pruned += cand.size() - kept.size();
            }
            out.assign(v, l, kept);
        }
    }
    out.compact();
    if (stats != nullptr) {
        stats->tti_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        stats->edges_pruned = pruned;
        stats->edges_truncated = truncated;
        fill_stats(out, stats);
    }
    return out;
}

GraphIndex
build(const Dataset& ds, const BuildParams& params, BuildStats* stats) {
    params.validate();
    check_dataset(ds);
    if (params.variant == Variant::kAcornGamma && params.prune == PruneStrategy::kRngMetadataAware) {
        check_label_attr(ds, params.label_attr);
    }
    auto start = std::chrono::steady_clock::now();
    if (params.variant == Variant::kAcornGamma) {
        BuildStats phase;
        GraphIndex cand = build_candidate_graph(ds, params, &phase);
        GraphIndex out = compress(cand, params.prune, params.m_beta, params.compressed_levels, stats);
        if (stats != nullptr) {
            stats->tti_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            stats->distance_computations = phase.distance_computations;
        }
        return out;
    }
    Inserter inserter(ds, params);
    inserter.run();
    GraphIndex out = std::move(inserter.index());
    out.compact();
    if (stats != nullptr) {
        stats->tti_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        stats->distance_computations = inserter.distance_computations();
        stats->edges_pruned = 0;
        stats->edges_truncated = 0;
        fill_stats(out, stats);
    }
    return out;
}

GraphIndex
build_acorn1(const Dataset& ds, std::uint32_t M, std::uint32_t efc, std::uint64_t seed) {
    return build(ds, BuildParams::acorn1(M, efc, seed), nullptr);
}

}  // namespace acorn
