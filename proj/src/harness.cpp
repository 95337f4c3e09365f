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
#include "acorn/harness.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "acorn/error.h"
#include "acorn/parallel.h"
#include "acorn/persistence.h"

namespace acorn {

namespace {

using Clock = std::chrono::steady_clock;

double
seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

double
recall_at_k(std::span<const Neighbor> truth, std::span<const NodeId> result, std::size_t k) {
    const std::size_t g = std::min(k, truth.size());
    if (g == 0) {
        return 1.0;
    }
    std::vector<NodeId> expected;
    expected.reserve(g);
    for (std::size_t i = 0; i < g; ++i) {
        expected.push_back(truth[i].id);
    }
    std::sort(expected.begin(), expected.end());
    std::vector<NodeId> got(result.begin(), result.begin() + std::min(k, result.size()));
    std::sort(got.begin(), got.end());
    got.erase(std::unique(got.begin(), got.end()), got.end());
    std::size_t hits = 0;
    for (NodeId id : got) {
        hits += std::binary_search(expected.begin(), expected.end(), id) ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(g);
}

std::vector<SweepRow>
SweepResult::method_rows(const std::string& method) const {
    std::vector<SweepRow> out;
    for (const SweepRow& r : rows) {
        if (r.method == method) {
            out.push_back(r);
        }
    }
    std::sort(out.begin(), out.end(), [](const SweepRow& a, const SweepRow& b) { return a.efs < b.efs; });
    return out;
}

std::string
SweepResult::to_csv() const {
    std::ostringstream os;
    os << "method,efs,recall,qps,qps_parallel,mean_dist_comps,mean_pred_evals,prefiltered_fraction\n";
    char buf[256];
    for (const SweepRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%s,%zu,%.6f,%.3f,%.3f,%.3f,%.3f,%.6f\n", r.method.c_str(), r.efs,
                      r.recall, r.qps, r.qps_parallel, r.mean_dist_comps, r.mean_pred_evals,
                      r.prefiltered_fraction);
        os << buf;
    }
    return os.str();
}

nlohmann::json
SweepResult::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const SweepRow& r : rows) {
        j.push_back({{"method", r.method},
                     {"efs", r.efs},
                     {"recall", r.recall},
                     {"qps", r.qps},
                     {"qps_parallel", r.qps_parallel},
                     {"mean_dist_comps", r.mean_dist_comps},
                     {"mean_pred_evals", r.mean_pred_evals},
                     {"prefiltered_fraction", r.prefiltered_fraction}});
    }
    return j;
}

namespace {

SearchReport
report_from(const Dataset& ds, const std::vector<Neighbor>& found, const SearchCounters& counters, Route route) {
    SearchReport r;
    r.ids.reserve(found.size());
    r.distances.reserve(found.size());
    for (const Neighbor& nb : found) {
        r.ids.push_back(nb.id);
        r.distances.push_back(reported_distance(ds.metric(), nb.distance));
    }
    r.counters = counters;
    r.route = route;
    return r;
}

}  // namespace

Method
graph_method(std::string name, const GraphIndex& index, Strategy strategy, const CostRouter* router) {
    return {std::move(name),
            [&index, strategy, router](const HybridQuery& q, std::size_t efs) {
                return hybrid_search(index, q, {q.k, std::max(efs, q.k), strategy}, router);
            },
            true};
}

Method
prefilter_method(const Dataset& ds) {
    return {"prefilter",
            [&ds](const HybridQuery& q, std::size_t) {
                SearchCounters c;
                auto found = prefilter_search(ds, q, c);
                return report_from(ds, found, c, Route::kPrefilter);
            },
            false};
}

Method
postfilter_method(const GraphIndex& hnsw, std::size_t sample_size, std::uint64_t seed) {
    auto router = std::make_shared<CostRouter>(1, CostRouter::Source::kSampled, sample_size, seed);
    return {"postfilter",
            [&hnsw, router](const HybridQuery& q, std::size_t efs) {
                const Dataset& ds = hnsw.dataset();
                double s = router->estimate(q.predicate, ds);
                s = std::clamp(s, 1.0 / static_cast<double>(std::max<std::size_t>(ds.size(), 1)), 1.0);
                SearchCounters c;
                auto found = postfilter_search(hnsw, q, efs, s, c);
                return report_from(ds, found, c, Route::kGraphSearch);
            },
            true};
}

Method
oracle_method(const OraclePartitionSet& ops) {
    return {"oracle",
            [&ops](const HybridQuery& q, std::size_t efs) {
                SearchCounters c;
                auto found = oracle_search(ops, q, q.k, std::max(efs, q.k), c);
                Metric metric = Metric::kL2;
                for (const auto& [label, part] : ops.partitions()) {
                    if (part.index) {
                        metric = part.index->dataset().metric();
                        break;
                    }
                }
                SearchReport r;
                for (const Neighbor& nb : found) {
                    r.ids.push_back(nb.id);
                    r.distances.push_back(reported_distance(metric, nb.distance));
                }
                r.counters = c;
                return r;
            },
            true};
}

std::vector<std::size_t>
default_efs_sweep() {
    std::vector<std::size_t> efs;
    for (std::size_t e = 10; e <= 800; e += 50) {
        efs.push_back(e);
    }
    efs.push_back(800);
    return efs;
}

void
sweep(const Method& method,
      std::span<const HybridQuery> workload,
      const GroundTruth& gt,
      const SweepOptions& options,
      SweepResult& out) {
    if (gt.results.size() != workload.size() || gt.k < options.k) {
        throw Error(ErrorCode::kGroundTruthMismatch,
                    "ground truth covers " + std::to_string(gt.results.size()) + " queries at K=" +
                        std::to_string(gt.k) + ", workload has " + std::to_string(workload.size()) +
                        " queries at K=" + std::to_string(options.k));
    }
    if (options.k == 0) {
        throw Error(ErrorCode::kInvalidK, "K must be positive");
    }
    std::set<std::size_t> efs_values;
    if (method.uses_efs) {
        for (std::size_t e : options.efs) {
            efs_values.insert(std::max(e, options.k));
        }
    } else {
        efs_values.insert(0);
    }
    const std::size_t nq = workload.size();
    const std::size_t repeats = std::max<std::size_t>(options.repeats, 1);
    const std::size_t workers = options.workers == 0 ? worker_count() : options.workers;
    for (std::size_t efs : efs_values) {
        SweepRow row;
        row.method = method.name;
        row.efs = efs;
        double recall_sum = 0.0;
        std::uint64_t dist = 0;
        std::uint64_t preds = 0;
        std::size_t prefiltered = 0;
        double elapsed = 0.0;
        for (std::size_t rep = 0; rep < repeats; ++rep) {
            auto start = Clock::now();
            for (std::size_t i = 0; i < nq; ++i) {
                SearchReport r = method.run(workload[i], efs);
                if (rep == 0) {
                    recall_sum += recall_at_k(gt.results[i], r.ids, options.k);
                    dist += r.counters.distance_computations;
                    preds += r.counters.predicate_evaluations;
                    prefiltered += r.prefiltered() ? 1 : 0;
                }
            }
            elapsed += seconds_since(start);
        }
        const double denom = nq == 0 ? 1.0 : static_cast<double>(nq);
        row.recall = nq == 0 ? 1.0 : recall_sum / denom;
        row.mean_dist_comps = static_cast<double>(dist) / denom;
        row.mean_pred_evals = static_cast<double>(preds) / denom;
        row.prefiltered_fraction = static_cast<double>(prefiltered) / denom;
        row.qps = static_cast<double>(nq * repeats) / std::max(elapsed, 1e-9);
        if (workers > 1 && nq > 0) {
            auto start = Clock::now();
            parallel_for(nq, [&](std::size_t i) { method.run(workload[i], efs); }, workers);
            row.qps_parallel = static_cast<double>(nq) / std::max(seconds_since(start), 1e-9);
        }
        out.rows.push_back(std::move(row));
    }
}

std::optional<double>
dist_comps_at_recall(const std::vector<SweepRow>& rows, double recall) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].recall < recall) {
            continue;
        }
        if (i == 0) {
            return rows[0].mean_dist_comps;
        }
        const SweepRow& a = rows[i - 1];
        const SweepRow& b = rows[i];
        const double t = (recall - a.recall) / (b.recall - a.recall);
        return a.mean_dist_comps + t * (b.mean_dist_comps - a.mean_dist_comps);
    }
    return std::nullopt;
}

std::optional<double>
recall_at_dist_comps(const std::vector<SweepRow>& rows, double dist_comps) {
    std::vector<SweepRow> sorted = rows;
    std::sort(sorted.begin(), sorted.end(),
              [](const SweepRow& a, const SweepRow& b) { return a.mean_dist_comps < b.mean_dist_comps; });
    if (sorted.empty() || sorted.front().mean_dist_comps > dist_comps) {
        return std::nullopt;
    }
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        const SweepRow& a = sorted[i];
        const SweepRow& b = sorted[i + 1];
        if (b.mean_dist_comps > dist_comps) {
            if (b.mean_dist_comps == a.mean_dist_comps) {
                return a.recall;
            }
            const double t = (dist_comps - a.mean_dist_comps) / (b.mean_dist_comps - a.mean_dist_comps);
            return a.recall + t * (b.recall - a.recall);
        }
    }
    return sorted.back().recall;
}

double
best_recall(const std::vector<SweepRow>& rows) {
    double best = 0.0;
    for (const SweepRow& r : rows) {
        best = std::max(best, r.recall);
    }
    return best;
}

namespace {

SubgraphView
make_view(const GraphIndex& index, const Predicate* p) {
    SubgraphView view;
    const AttributeTable& table = index.dataset().attributes();
    const Strategy strategy = default_strategy(index.params().variant);
    std::vector<std::uint32_t> local(index.size(), kNoNode);
    for (std::uint32_t l = 0; l < index.num_levels(); ++l) {
        LevelView lv;
        for (NodeId v : index.level_nodes(l)) {
            if (p == nullptr || p->matches(table, v)) {
                local[v] = static_cast<std::uint32_t>(lv.nodes.size());
                lv.nodes.push_back(v);
            }
        }
        SearchCounters scratch;
        for (NodeId v : lv.nodes) {
            if (p == nullptr) {
                for (NodeId u : index.list(v, l)) {
                    lv.targets.push_back(local[u]);
                }
            } else {
                for (NodeId u : get_neighbors(index, v, l, *p, strategy, scratch)) {
                    lv.targets.push_back(local[u]);
                }
            }
            lv.offsets.push_back(static_cast<std::uint32_t>(lv.targets.size()));
        }
        for (NodeId v : lv.nodes) {
            local[v] = kNoNode;
        }
        view.levels.push_back(std::move(lv));
    }
    return view;
}

}  // namespace

SubgraphView
predicate_subgraph(const GraphIndex& index, const Predicate& p) {
    p.validate(index.dataset().attributes().schema());
    return make_view(index, &p);
}

SubgraphView
full_view(const GraphIndex& index) {
    return make_view(index, nullptr);
}

std::size_t
count_scc(const LevelView& level) {
    const std::size_t n = level.nodes.size();
    constexpr std::uint32_t kUnset = 0xFFFFFFFFu;
    std::vector<std::uint32_t> index(n, kUnset);
    std::vector<std::uint32_t> low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<std::uint32_t> stack;
    // Explicit DFS frames: node and the next edge offset to explore.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> frames;
    std::uint32_t counter = 0;
    std::size_t components = 0;
    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] != kUnset) {
            continue;
        }
        frames.push_back({root, level.offsets[root]});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!frames.empty()) {
            auto& [v, next] = frames.back();
            if (next < level.offsets[v + 1]) {
                std::uint32_t w = level.targets[next++];
                if (index[w] == kUnset) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.push_back({w, level.offsets[w]});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const std::uint32_t done = v;
            frames.pop_back();
            if (low[done] == index[done]) {
                std::uint32_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                } while (w != done);
                ++components;
            }
            if (!frames.empty()) {
                std::uint32_t parent = frames.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
        }
    }
    return components;
}

nlohmann::json
GraphQualityReport::to_json() const {
    nlohmann::json levels_json = nlohmann::json::array();
    for (const LevelQuality& q : levels) {
        levels_json.push_back({{"n_nodes", q.n_nodes},
                               {"n_edges", q.n_edges},
                               {"n_scc", q.n_scc},
                               {"mean_out_degree", q.mean_out_degree}});
    }
    return {{"graph_height", graph_height}, {"levels", levels_json}};
}

GraphQualityReport
graph_quality(const SubgraphView& view) {
    GraphQualityReport report;
    for (std::size_t l = 0; l < view.levels.size(); ++l) {
        const LevelView& lv = view.levels[l];
        LevelQuality q;
        q.n_nodes = lv.nodes.size();
        q.n_edges = lv.targets.size();
        q.n_scc = count_scc(lv);
        q.mean_out_degree = q.n_nodes == 0 ? 0.0 : static_cast<double>(q.n_edges) / q.n_nodes;
        if (q.n_nodes > 0) {
            report.graph_height = static_cast<int>(l);
        }
        report.levels.push_back(q);
    }
    return report;
}

DegreeConcentration
degree_concentration_audit(const GraphIndex& index, std::span<const Predicate> predicates) {
    DegreeConcentration out;
    out.predicates = predicates.size();
    const std::size_t levels = index.num_levels();
    std::vector<double> filtered(levels, 0.0);
    std::vector<double> raw(levels, 0.0);
    std::vector<double> zero(levels, 0.0);
    std::vector<double> count(levels, 0.0);
    const AttributeTable& table = index.dataset().attributes();
    std::vector<char> passes(index.size());
    for (const Predicate& p : predicates) {
        p.validate(table.schema());
        for (NodeId v = 0; v < index.size(); ++v) {
            passes[v] = p.matches(table, v) ? 1 : 0;
        }
        for (std::uint32_t l = 0; l < levels; ++l) {
            for (NodeId v : index.level_nodes(l)) {
                if (!passes[v]) {
                    continue;
                }
                auto nb = index.list(v, l);
                std::size_t d = 0;
                for (NodeId u : nb) {
                    d += passes[u];
                }
                filtered[l] += static_cast<double>(d);
                raw[l] += static_cast<double>(nb.size());
                zero[l] += d == 0 ? 1.0 : 0.0;
                count[l] += 1.0;
            }
        }
    }
    for (std::size_t l = 0; l < levels; ++l) {
        const double c = std::max(count[l], 1.0);
        out.mean_filtered_degree.push_back(filtered[l] / c);
        out.mean_raw_degree.push_back(raw[l] / c);
        out.zero_degree_fraction.push_back(zero[l] / c);
    }
    return out;
}

RecoverabilityReport
audit_recoverability(const GraphIndex& candidates, const GraphIndex& compressed) {
    const BuildParams& p = compressed.params();
    if (candidates.params().variant != Variant::kAcornGamma || p.prune != PruneStrategy::kAcornMBeta ||
        candidates.size() != compressed.size()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "recoverability needs an acorn-gamma candidate graph and its m_beta compression");
    }
    RecoverabilityReport report;
    const std::size_t m_beta = p.m_beta;
    const std::size_t cap = std::size_t{p.M} * p.gamma;
    const std::uint32_t levels =
        std::min<std::uint32_t>(p.compressed_levels, static_cast<std::uint32_t>(candidates.num_levels()));
    for (std::uint32_t l = 0; l < levels; ++l) {
        auto two_hop = [&](NodeId c) {
            auto nb = candidates.list(c, l);
            return nb.subspan(0, stable_prefix(nb.size(), m_beta));
        };
        for (NodeId v : candidates.level_nodes(l)) {
            ++report.nodes_checked;
            PruneOutcome r = prune_acorn(candidates.list(v, l), m_beta, cap, two_hop);
            report.truncated += r.truncated.size();
            auto final_list = compressed.list(v, l);
            for (NodeId x : r.pruned) {
                ++report.pruned_checked;
                bool found = false;
                for (std::size_t i = m_beta; i < final_list.size() && !found; ++i) {
                    auto second = compressed.list(final_list[i], l);
                    found = std::find(second.begin(), second.end(), x) != second.end();
                }
                report.unrecoverable += found ? 0 : 1;
            }
        }
    }
    return report;
}

nlohmann::json
BuildMeasurement::to_json() const {
    return {{"tti_seconds", tti_seconds},
            {"index_bytes", index_bytes},
            {"index_with_vectors_bytes", index_with_vectors_bytes},
            {"per_level_mean_degree", per_level_mean_degree},
            {"edges_pruned", edges_pruned},
            {"edges_total", edges_total},
            {"distance_computations", distance_computations}};
}

BuildMeasurement
measure_index(const GraphIndex& index) {
    BuildMeasurement m;
    m.index_bytes = serialize_index(index).size();
    m.index_with_vectors_bytes =
        m.index_bytes + std::uint64_t{index.size()} * index.dataset().dim() * sizeof(float);
    m.per_level_mean_degree = index.mean_degrees();
    m.edges_total = index.total_edges();
    return m;
}

BuildMeasurement
measure_build(const Dataset& ds, const BuildParams& params, GraphIndex* out) {
    BuildStats stats;
    GraphIndex index = build(ds, params, &stats);
    BuildMeasurement m = measure_index(index);
    m.tti_seconds = stats.tti_seconds;
    m.edges_pruned = stats.edges_pruned;
    m.distance_computations = stats.distance_computations;
    if (out != nullptr) {
        *out = std::move(index);
    }
    return m;
}

}  // namespace acorn
