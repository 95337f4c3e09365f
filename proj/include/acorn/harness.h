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
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "acorn/baselines.h"
#include "acorn/build.h"
#include "acorn/graph.h"
#include "acorn/search.h"
#include "acorn/workload.h"

namespace acorn {

/// recall@K = |G ∩ R| / min(K, |G|) with G the first K ground-truth ids; 1.0
/// when G is empty.
double
recall_at_k(std::span<const Neighbor> truth, std::span<const NodeId> result, std::size_t k);

/// One search method under test. `run` answers a query at a beam width; methods
/// that ignore efs (pre-filtering) are swept once.
struct Method {
    std::string name;
    std::function<SearchReport(const HybridQuery&, std::size_t efs)> run;
    bool uses_efs = true;
};

struct SweepRow {
    std::string method;
    std::size_t efs = 0;
    double recall = 0.0;
    /// Single-threaded queries per second.
    double qps = 0.0;
    /// Throughput on the worker pool; 0 when only one worker is available.
    double qps_parallel = 0.0;
    double mean_dist_comps = 0.0;
    double mean_pred_evals = 0.0;
    double prefiltered_fraction = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;

    /// Rows of one method, ascending in efs.
    std::vector<SweepRow>
    method_rows(const std::string& method) const;

    std::string
    to_csv() const;

    nlohmann::json
    to_json() const;
};

/// Hybrid search on a graph index with an optional pre-filter router.
Method
graph_method(std::string name, const GraphIndex& index, Strategy strategy, const CostRouter* router = nullptr);

/// Exact linear scan; ignores efs.
Method
prefilter_method(const Dataset& ds);

/// Post-filtering over an HNSW index. The fan-out uses a sampled selectivity
/// estimate (floored at 1/n).
Method
postfilter_method(const GraphIndex& hnsw, std::size_t sample_size = 1000, std::uint64_t seed = 0);

/// Oracle partition search.
Method
oracle_method(const OraclePartitionSet& ops);

/// efs from 10 to 800: 10, 60, ..., 760, then 800.
std::vector<std::size_t>
default_efs_sweep();

struct SweepOptions {
    std::size_t k = 10;
    std::vector<std::size_t> efs = default_efs_sweep();
    /// Timed passes over the workload per row; recall comes from the first.
    std::size_t repeats = 1;
    /// Workers for the parallel throughput column (0 = worker_count()).
    std::size_t workers = 0;
};

/// Runs `method` over the workload at every efs (efs values below K are
/// raised to K) and appends one row per distinct efs. Throws
/// kGroundTruthMismatch if `gt` does not cover the workload at depth K.
void
sweep(const Method& method,
      std::span<const HybridQuery> workload,
      const GroundTruth& gt,
      const SweepOptions& options,
      SweepResult& out);

/// Mean distance computations needed to reach `recall`, linearly interpolated
/// between the adjacent rows that bracket it. nullopt if no row reaches it.
std::optional<double>
dist_comps_at_recall(const std::vector<SweepRow>& rows, double recall);

/// Recall reachable within `dist_comps` mean distance computations, linearly
/// interpolated; nullopt if the cheapest row already exceeds the budget.
std::optional<double>
recall_at_dist_comps(const std::vector<SweepRow>& rows, double dist_comps);

/// Best recall over the rows of a method.
double
best_recall(const std::vector<SweepRow>& rows);

/// Directed per-level graph in local numbering: `nodes[i]` is the global id
/// of local node i and its out-edges are targets[offsets[i] .. offsets[i+1]).
struct LevelView {
    std::vector<NodeId> nodes;
    std::vector<std::uint32_t> offsets{0};
    std::vector<std::uint32_t> targets;
};

struct SubgraphView {
    std::vector<LevelView> levels;
};

/// The subgraph filtered search traverses for `p`: on every level the passing
/// nodes, each with edges to its get_neighbors() output under the variant's
/// default strategy. Analysis only.
SubgraphView
predicate_subgraph(const GraphIndex& index, const Predicate& p);

/// The whole index as a view.
SubgraphView
full_view(const GraphIndex& index);

/// Number of strongly connected components (iterative Tarjan).
std::size_t
count_scc(const LevelView& level);

struct LevelQuality {
    std::size_t n_nodes = 0;
    std::size_t n_edges = 0;
    std::size_t n_scc = 0;
    double mean_out_degree = 0.0;
};

struct GraphQualityReport {
    std::vector<LevelQuality> levels;
    /// Highest level holding at least one node; -1 for an empty view.
    int graph_height = -1;

    nlohmann::json
    to_json() const;
};

GraphQualityReport
graph_quality(const SubgraphView& view);

struct DegreeConcentration {
    /// Per level, mean number of passing neighbors over passing nodes, on the
    /// full stored lists (no truncation).
    std::vector<double> mean_filtered_degree;
    /// Per level, fraction of passing nodes with no passing neighbor.
    std::vector<double> zero_degree_fraction;
    std::vector<double> mean_raw_degree;
    std::size_t predicates = 0;
};

/// Averages filtered out-degree statistics over a set of predicates.
DegreeConcentration
degree_concentration_audit(const GraphIndex& index, std::span<const Predicate> predicates);

struct RecoverabilityReport {
    std::uint64_t nodes_checked = 0;
    /// Candidates removed by the two-hop rule (not by early truncation).
    std::uint64_t pruned_checked = 0;
    std::uint64_t unrecoverable = 0;
    std::uint64_t truncated = 0;
};

/// Replays m_beta pruning over `candidates` and checks that every rule-pruned
/// candidate x of v is found in the `compressed` list of some neighbor y at a
/// position >= m_beta of v's compressed list, i.e. by the two-hop expansion.
RecoverabilityReport
audit_recoverability(const GraphIndex& candidates, const GraphIndex& compressed);

struct BuildMeasurement {
    double tti_seconds = 0.0;
    std::uint64_t index_bytes = 0;
    std::uint64_t index_with_vectors_bytes = 0;
    std::vector<double> per_level_mean_degree;
    std::uint64_t edges_pruned = 0;
    std::uint64_t edges_total = 0;
    std::uint64_t distance_computations = 0;

    nlohmann::json
    to_json() const;
};

/// Builds and measures; the index is moved into `out` when given.
BuildMeasurement
measure_build(const Dataset& ds, const BuildParams& params, GraphIndex* out = nullptr);

/// Size accounting of an existing index (serialized bytes, degrees).
BuildMeasurement
measure_index(const GraphIndex& index);

}  // namespace acorn
