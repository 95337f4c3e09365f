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
#include <catch_amalgamated.hpp>

#include <queue>
#include <random>
#include <set>

#include "acorn/error.h"
#include "acorn/harness.h"
#include "test_util.h"

using namespace acorn;

namespace {

SweepRow
row(double dc, double recall) {
    SweepRow r;
    r.mean_dist_comps = dc;
    r.recall = recall;
    return r;
}

LevelView
random_level(std::size_t n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution edge(p);
    LevelView lv;
    for (std::size_t i = 0; i < n; ++i) {
        lv.nodes.push_back(static_cast<NodeId>(i));
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && edge(rng)) {
                lv.targets.push_back(static_cast<std::uint32_t>(j));
            }
        }
        lv.offsets.push_back(static_cast<std::uint32_t>(lv.targets.size()));
    }
    return lv;
}

// Components as classes of mutual reachability, from one BFS per node.
std::size_t
naive_scc(const LevelView& lv) {
    const std::size_t n = lv.nodes.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t s = 0; s < n; ++s) {
        std::queue<std::size_t> q;
        q.push(s);
        reach[s][s] = true;
        while (!q.empty()) {
            std::size_t u = q.front();
            q.pop();
            for (std::uint32_t e = lv.offsets[u]; e < lv.offsets[u + 1]; ++e) {
                std::size_t w = lv.targets[e];
                if (!reach[s][w]) {
                    reach[s][w] = true;
                    q.push(w);
                }
            }
        }
    }
    std::set<std::vector<bool>> classes;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<bool> cls(n);
        for (std::size_t j = 0; j < n; ++j) {
            cls[j] = reach[i][j] && reach[j][i];
        }
        classes.insert(cls);
    }
    return classes.size();
}

}  // namespace

TEST_CASE("recall counts hits over the truth depth", "[harness]") {
    std::vector<Neighbor> truth = {{1, 0.1f}, {2, 0.2f}, {3, 0.3f}, {4, 0.4f}};
    std::vector<NodeId> r = {2, 9, 4};
    CHECK(recall_at_k(truth, r, 4) == Catch::Approx(0.5));
    CHECK(recall_at_k(truth, r, 2) == Catch::Approx(0.5));
    CHECK(recall_at_k(truth, std::vector<NodeId>{1, 2}, 10) == Catch::Approx(0.5));
    CHECK(recall_at_k({}, r, 10) == 1.0);
    CHECK(recall_at_k(truth, {}, 3) == 0.0);
}

TEST_CASE("sweep curves interpolate linearly between bracketing rows", "[harness]") {
    std::vector<SweepRow> rows = {row(100, 0.5), row(200, 0.7), row(400, 0.9)};
    CHECK(*dist_comps_at_recall(rows, 0.8) == Catch::Approx(300));
    CHECK(*dist_comps_at_recall(rows, 0.7) == Catch::Approx(200));
    CHECK(*dist_comps_at_recall(rows, 0.3) == Catch::Approx(100));
    CHECK(!dist_comps_at_recall(rows, 0.95));
    CHECK(*recall_at_dist_comps(rows, 300) == Catch::Approx(0.8));
    CHECK(*recall_at_dist_comps(rows, 150) == Catch::Approx(0.6));
    CHECK(*recall_at_dist_comps(rows, 1000) == Catch::Approx(0.9));
    CHECK(!recall_at_dist_comps(rows, 50));
    CHECK(best_recall(rows) == 0.9);
    auto efs = default_efs_sweep();
    CHECK(efs.front() == 10);
    CHECK(efs.back() == 800);
    CHECK(efs[1] == 60);
}

TEST_CASE("strongly connected components match mutual reachability", "[harness][property]") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 1 + rng() % 120;
        double p = std::uniform_real_distribution<double>(0.0, 4.0 / n)(rng);
        LevelView lv = random_level(n, p, rng);
        CHECK(count_scc(lv) == naive_scc(lv));
    }
    LevelView big = random_level(500, 1.5 / 500, rng);
    CHECK(count_scc(big) == naive_scc(big));
    CHECK(count_scc(random_level(30, 1.0, rng)) == 1);
    CHECK(count_scc(random_level(30, 0.0, rng)) == 30);
    CHECK(count_scc(LevelView{}) == 0);
}

TEST_CASE("predicate subgraphs keep passers and their filtered prefixes", "[harness]") {
    // Without pruning the two-hop phase never fires, so every neighborhood is
    // a filtered prefix of the stored list.
    Dataset ds = testing::random_dataset(600, 4, 3, 6, 51);
    for (const BuildParams& bp : {BuildParams::hnsw(6, 30, 1), BuildParams::acorn_gamma(6, 30, 3, 18, 1)}) {
        GraphIndex g = build(ds, bp);
        Predicate p = Predicate::equals(0, 1);
        SubgraphView view = predicate_subgraph(g, p);
        REQUIRE(view.levels.size() == g.num_levels());
        const std::size_t bound = bp.variant == Variant::kHnsw ? 0 : bp.M;
        for (std::uint32_t l = 0; l < g.num_levels(); ++l) {
            const LevelView& lv = view.levels[l];
            std::vector<NodeId> expect_nodes;
            for (NodeId v : g.level_nodes(l)) {
                if (evaluate(p, ds.attributes().tuple(v))) {
                    expect_nodes.push_back(v);
                }
            }
            REQUIRE(lv.nodes == expect_nodes);
            for (std::size_t i = 0; i < lv.nodes.size(); ++i) {
                std::vector<NodeId> expect;
                std::size_t cap = bound == 0 ? g.level_cap(l) : bound;
                for (NodeId u : g.list(lv.nodes[i], l)) {
                    if (expect.size() < cap && evaluate(p, ds.attributes().tuple(u))) {
                        expect.push_back(u);
                    }
                }
                std::vector<NodeId> got;
                for (std::uint32_t e = lv.offsets[i]; e < lv.offsets[i + 1]; ++e) {
                    got.push_back(lv.nodes[lv.targets[e]]);
                }
                CHECK(got == expect);
            }
        }
        GraphQualityReport q = graph_quality(full_view(g));
        CHECK(q.graph_height == static_cast<int>(g.max_level()));
        CHECK(q.levels[0].n_nodes == ds.size());
        std::size_t edges = 0;
        for (NodeId v = 0; v < ds.size(); ++v) {
            edges += g.list(v, 0).size();
        }
        CHECK(q.levels[0].n_edges == edges);
        CHECK(q.to_json().contains("levels"));
    }
}

TEST_CASE("degree audit at full selectivity reports raw degrees", "[harness]") {
    Dataset ds = testing::random_dataset(400, 4, 3, 6, 52);
    GraphIndex g = build(ds, BuildParams::acorn1(6, 30, 1));
    std::vector<Predicate> all = {Predicate::always_true()};
    DegreeConcentration dc = degree_concentration_audit(g, all);
    CHECK(dc.predicates == 1);
    auto mean = g.mean_degrees();
    for (std::size_t l = 0; l < mean.size(); ++l) {
        CHECK(dc.mean_filtered_degree[l] == Catch::Approx(mean[l]));
        CHECK(dc.mean_raw_degree[l] == Catch::Approx(mean[l]));
    }
}

TEST_CASE("two-hop pruning leaves every pruned edge recoverable", "[harness]") {
    Dataset ds = testing::random_dataset(800, 6, 3, 6, 53);
    BuildParams bp = BuildParams::acorn_gamma(6, 30, 4, 6, 3);
    GraphIndex cand = build_candidate_graph(ds, bp);
    GraphIndex comp = compress(cand, PruneStrategy::kAcornMBeta, 6, 1);
    RecoverabilityReport r = audit_recoverability(cand, comp);
    CHECK(r.nodes_checked == ds.size());
    CHECK(r.pruned_checked > 0);
    CHECK(r.unrecoverable == 0);
}

TEST_CASE("sweeps produce one row per beam width", "[harness]") {
    Dataset ds = testing::random_dataset(500, 4, 3, 6, 54);
    GraphIndex g = build(ds, BuildParams::acorn_gamma(6, 30, 3, 6, 1));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<float> coord(-1.0f, 1.0f);
    std::vector<HybridQuery> qs;
    for (int i = 0; i < 20; ++i) {
        HybridQuery q;
        for (int d = 0; d < 4; ++d) {
            q.vector.push_back(coord(rng));
        }
        q.predicate = Predicate::equals(0, i % 3);
        qs.push_back(q);
    }
    GroundTruth gt = ground_truth(ds, qs, 10);
    SweepOptions opt;
    opt.efs = {5, 20, 10};
    SweepResult res;
    sweep(prefilter_method(ds), qs, gt, opt, res);
    sweep(graph_method("acorn-gamma", g, Strategy::kCompressed2Hop), qs, gt, opt, res);
    auto pre = res.method_rows("prefilter");
    REQUIRE(pre.size() == 1);
    CHECK(pre[0].recall == 1.0);
    CHECK(pre[0].mean_dist_comps > 0);
    auto gr = res.method_rows("acorn-gamma");
    REQUIRE(gr.size() == 2);
    CHECK(gr[0].efs == 10);
    CHECK(gr[1].efs == 20);
    CHECK(gr[0].mean_dist_comps <= gr[1].mean_dist_comps);
    CHECK(res.to_csv().find("acorn-gamma") != std::string::npos);
    CHECK(res.to_json().size() == 3);

    GroundTruth short_gt = gt;
    short_gt.results.pop_back();
    try {
        sweep(prefilter_method(ds), qs, short_gt, opt, res);
        FAIL("mismatched ground truth accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kGroundTruthMismatch);
    }
}

TEST_CASE("build measurement accounts for edges and bytes", "[harness]") {
    Dataset ds = testing::random_dataset(300, 8, 3, 6, 55);
    GraphIndex g;
    BuildMeasurement m = measure_build(ds, BuildParams::acorn1(4, 20, 1), &g);
    CHECK(m.edges_total == g.total_edges());
    CHECK(m.index_with_vectors_bytes == m.index_bytes + 300 * 8 * sizeof(float));
    CHECK(m.per_level_mean_degree == g.mean_degrees());
    CHECK(m.tti_seconds > 0);
    CHECK(m.to_json().contains("tti_seconds"));
}
