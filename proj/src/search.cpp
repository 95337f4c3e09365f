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
#include "acorn/search.h"

#include <chrono>

#include "acorn/baselines.h"
#include "acorn/error.h"
#include "search_core.h"

namespace acorn {

std::string_view
strategy_name(Strategy s) {
    switch (s) {
        case Strategy::kFilterOnly:
            return "filter-only";
        case Strategy::kCompressed2Hop:
            return "compressed-2hop";
        case Strategy::kAcorn1FullExpansion:
            return "acorn1-full-expansion";
        case Strategy::kUnfiltered:
            return "unfiltered";
    }
    return "?";
}

Strategy
parse_strategy(std::string_view name) {
    for (Strategy s : {Strategy::kFilterOnly, Strategy::kCompressed2Hop,
                       Strategy::kAcorn1FullExpansion, Strategy::kUnfiltered}) {
        if (strategy_name(s) == name) {
            return s;
        }
    }
    throw Error(ErrorCode::kInvalidArgument, "unknown strategy '" + std::string(name) + "'");
}

Strategy
default_strategy(Variant v) {
    switch (v) {
        case Variant::kAcornGamma:
            return Strategy::kCompressed2Hop;
        case Variant::kAcorn1:
            return Strategy::kAcorn1FullExpansion;
        case Variant::kHnsw:
            return Strategy::kFilterOnly;
    }
    return Strategy::kFilterOnly;
}

namespace {

thread_local VisitedTable tls_visited;

void
check_strategy(const GraphIndex& index, Strategy strategy) {
    Variant v = index.params().variant;
    if (strategy == Strategy::kCompressed2Hop && v != Variant::kAcornGamma) {
        throw Error(ErrorCode::kInvalidArgument, "compressed-2hop needs an acorn-gamma index");
    }
    if (strategy == Strategy::kAcorn1FullExpansion && v != Variant::kAcorn1) {
        throw Error(ErrorCode::kInvalidArgument,
                    "acorn1-full-expansion needs an acorn-1 index");
    }
}

/// Output bound for filtered neighborhoods: M for the ACORN variants, the full
/// level cap for HNSW so that an always-true predicate reproduces plain HNSW.
std::uint32_t
output_bound(const GraphIndex& index, std::uint32_t l) {
    return index.params().variant == Variant::kHnsw ? index.level_cap(l) : index.params().M;
}

bool
listed(const std::vector<NodeId>& out, NodeId v) {
    return std::find(out.begin(), out.end(), v) != out.end();
}

void
collect_neighbors(const GraphIndex& index,
                  NodeId c,
                  std::uint32_t l,
                  const Predicate& p,
                  Strategy strategy,
                  SearchCounters& counters,
                  std::vector<NodeId>& out) {
    const AttributeTable& table = index.dataset().attributes();
    const std::size_t bound = output_bound(index, l);
    auto passes = [&](NodeId v) {
        ++counters.predicate_evaluations;
        return p.matches(table, v);
    };
    auto nb = index.list(c, l);
    // Only levels compressed by the m_beta rule hold recoverable two-hop tails.
    if (strategy == Strategy::kCompressed2Hop &&
        (l >= index.params().compressed_levels ||
         index.params().prune != PruneStrategy::kAcornMBeta)) {
        strategy = Strategy::kFilterOnly;
    }
    switch (strategy) {
        case Strategy::kUnfiltered: {
            std::size_t take = std::min<std::size_t>(nb.size(), bound);
            out.insert(out.end(), nb.begin(), nb.begin() + take);
            return;
        }
        case Strategy::kFilterOnly:
            for (NodeId v : nb) {
                if (out.size() >= bound) {
                    return;
                }
                if (passes(v)) {
                    out.push_back(v);
                }
            }
            return;
        case Strategy::kCompressed2Hop: {
            const std::size_t m_beta = std::min<std::size_t>(index.params().m_beta, nb.size());
            for (std::size_t i = 0; i < m_beta; ++i) {
                if (out.size() >= bound) {
                    return;
                }
                if (passes(nb[i])) {
                    out.push_back(nb[i]);
                }
            }
            for (std::size_t i = m_beta; i < nb.size(); ++i) {
                NodeId y = nb[i];
                if (out.size() >= bound) {
                    return;
                }
                if (!listed(out, y) && passes(y)) {
                    out.push_back(y);
                }
                for (NodeId z : index.list(y, l)) {
                    if (out.size() >= bound) {
                        return;
                    }
                    if (z != c && !listed(out, z) && passes(z)) {
                        out.push_back(z);
                    }
                }
            }
            return;
        }
        case Strategy::kAcorn1FullExpansion:
            for (NodeId v : nb) {
                if (out.size() >= bound) {
                    return;
                }
                if (passes(v)) {
                    out.push_back(v);
                }
            }
            for (NodeId y : nb) {
                for (NodeId z : index.list(y, l)) {
                    if (out.size() >= bound) {
                        return;
                    }
                    if (z != c && !listed(out, z) && passes(z)) {
                        out.push_back(z);
                    }
                }
            }
            return;
    }
}

std::vector<Neighbor>
layer_search(const GraphIndex& index,
             const float* query,
             const Predicate& p,
             NodeId entry,
             std::size_t ef,
             std::uint32_t l,
             Strategy strategy,
             SearchCounters& counters) {
    bool entry_passes = true;
    if (strategy != Strategy::kUnfiltered) {
        ++counters.predicate_evaluations;
        entry_passes = p.matches(index.dataset().attributes(), entry);
    }
    std::vector<Neighbor> result;
    detail::beam_search(
        index.dataset(), query, entry, entry_passes, ef, tls_visited, counters,
        [&](NodeId c, std::vector<NodeId>& out) {
            collect_neighbors(index, c, l, p, strategy, counters, out);
        },
        result);
    return result;
}

}  // namespace

std::vector<NodeId>
get_neighbors(const GraphIndex& index,
              NodeId c,
              std::uint32_t l,
              const Predicate& p,
              Strategy strategy,
              SearchCounters& counters) {
    if (!index.contains(c, l)) {
        throw Error(ErrorCode::kUnknownNode,
                    "node " + std::to_string(c) + " is not on level " + std::to_string(l));
    }
    check_strategy(index, strategy);
    std::vector<NodeId> out;
    collect_neighbors(index, c, l, p, strategy, counters, out);
    return out;
}

std::vector<Neighbor>
search_layer(const GraphIndex& index,
             const float* query,
             const Predicate& p,
             NodeId entry,
             std::size_t ef,
             std::uint32_t l,
             Strategy strategy,
             SearchCounters& counters) {
    if (!index.contains(entry, l)) {
        throw Error(ErrorCode::kUnknownNode,
                    "entry " + std::to_string(entry) + " is not on level " + std::to_string(l));
    }
    if (ef == 0) {
        throw Error(ErrorCode::kInvalidArgument, "ef must be positive");
    }
    check_strategy(index, strategy);
    return layer_search(index, query, p, entry, ef, l, strategy, counters);
}

SearchReport
hybrid_search(const GraphIndex& index,
              const HybridQuery& q,
              const SearchParams& params,
              const CostRouter* router) {
    if (params.k == 0 || params.k > params.efs) {
        throw Error(ErrorCode::kInvalidK, "need 1 <= K <= efs (K = " + std::to_string(params.k) +
                                              ", efs = " + std::to_string(params.efs) + ")");
    }
    const Dataset& ds = index.dataset();
    if (q.vector.size() != ds.dim()) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "query dimension " + std::to_string(q.vector.size()) + " != " +
                        std::to_string(ds.dim()));
    }
    check_strategy(index, params.strategy);
    q.predicate.validate(ds.attributes().schema());

    auto start = std::chrono::steady_clock::now();
    SearchReport report;
    if (router != nullptr) {
        report.selectivity_estimate = router->estimate(q.predicate, ds);
        report.route = router->decide(report.selectivity_estimate);
        if (report.route == Route::kPrefilter) {
            HybridQuery exact = q;
            exact.k = params.k;
            auto found = prefilter_search(ds, exact, report.counters);
            for (const Neighbor& nb : found) {
                report.ids.push_back(nb.id);
                report.distances.push_back(reported_distance(ds.metric(), nb.distance));
            }
            report.latency_us = std::chrono::duration<double, std::micro>(
                                    std::chrono::steady_clock::now() - start)
                                    .count();
            return report;
        }
    }
    if (index.size() == 0) {
        return report;
    }

    NodeId ep = index.entry_point();
    for (std::uint32_t l = index.max_level(); l > 0; --l) {
        auto w = layer_search(index, q.vector.data(), q.predicate, ep, 1, l, params.strategy,
                              report.counters);
        ep = w.front().id;
    }
    auto w = layer_search(index, q.vector.data(), q.predicate, ep, params.efs, 0,
                          params.strategy, report.counters);
    std::vector<Neighbor> passing;
    for (const Neighbor& nb : w) {
        ++report.counters.predicate_evaluations;
        if (q.predicate.matches(ds.attributes(), nb.id)) {
            passing.push_back(nb);
        }
    }
    std::sort(passing.begin(), passing.end());
    if (passing.size() > params.k) {
        passing.resize(params.k);
    }
    for (const Neighbor& nb : passing) {
        report.ids.push_back(nb.id);
        report.distances.push_back(reported_distance(ds.metric(), nb.distance));
    }
    report.latency_us =
        std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

std::vector<Neighbor>
unfiltered_search(const GraphIndex& index,
                  const float* query,
                  std::size_t k,
                  std::size_t efs,
                  SearchCounters& counters) {
    if (index.params().variant != Variant::kHnsw) {
        throw Error(ErrorCode::kInvalidArgument, "unfiltered search needs an hnsw index");
    }
    if (k == 0) {
        throw Error(ErrorCode::kInvalidK, "K must be positive");
    }
    if (index.size() == 0) {
        return {};
    }
    efs = std::max(efs, k);
    const Predicate all = Predicate::always_true();
    NodeId ep = index.entry_point();
    for (std::uint32_t l = index.max_level(); l > 0; --l) {
        ep = layer_search(index, query, all, ep, 1, l, Strategy::kUnfiltered, counters).front().id;
    }
    auto w = layer_search(index, query, all, ep, efs, 0, Strategy::kUnfiltered, counters);
    if (w.size() > k) {
        w.resize(k);
    }
    return w;
}

}  // namespace acorn
