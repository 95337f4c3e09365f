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
#include "cli.h"

#include <sys/utsname.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "acorn/baselines.h"
#include "acorn/build.h"
#include "acorn/error.h"
#include "acorn/harness.h"
#include "acorn/parallel.h"
#include "acorn/persistence.h"
#include "acorn/workload.h"

namespace acorn {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

/// Invalid user input caught before any heavy work.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void
write_text(const fs::path& path, const std::string& text) {
    write_file(path, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

std::string
hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string
file_checksum(const fs::path& path) {
    auto bytes = read_file(path);
    return hex64(fnv1a64(bytes.data(), bytes.size()));
}

std::string
utc_timestamp() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json
host_info() {
    json host = {{"hardware_threads", std::thread::hardware_concurrency()},
                 {"workers", worker_count()}};
    utsname u{};
    if (uname(&u) == 0) {
        host["system"] = u.sysname;
        host["release"] = u.release;
        host["machine"] = u.machine;
        host["node"] = u.nodename;
    }
    return host;
}

/// Snapshot of every option of a subcommand: given values, else defaults.
json
config_snapshot(const CLI::App& sub) {
    json cfg = json::object();
    for (const CLI::Option* opt : sub.get_options()) {
        if (opt->get_lnames().empty() || opt->get_lnames().front() == "help") {
            continue;
        }
        const std::string& key = opt->get_lnames().front();
        if (opt->count() > 0) {
            const auto& res = opt->results();
            cfg[key] = res.size() == 1 ? json(res.front()) : json(res);
        } else {
            cfg[key] = opt->get_default_str();
        }
    }
    return cfg;
}

void
write_manifest(const fs::path& dir,
               const CLI::App& sub,
               const std::map<std::string, fs::path>& checksummed,
               json extra = json::object()) {
    json m = {{"tool", "acorn_cli"},
              {"version", kVersion},
              {"command", sub.get_name()},
              {"config", config_snapshot(sub)},
              {"host", host_info()},
              {"timestamp", utc_timestamp()}};
    json sums = json::object();
    for (const auto& [name, path] : checksummed) {
        sums[name] = {{"path", path.filename().string()}, {"fnv1a64", file_checksum(path)}};
    }
    m["checksums"] = sums;
    for (auto& [k, v] : extra.items()) {
        m[k] = v;
    }
    write_text(dir / "manifest.json", m.dump(2) + "\n");
}

void
require_dataset(const std::string& stem) {
    for (const char* suffix : {".fvecs", ".schema.json", ".attrs.jsonl"}) {
        if (!fs::exists(stem + suffix)) {
            throw UsageError("--dataset: missing " + stem + suffix);
        }
    }
}

void
require_file(const std::string& flag, const std::string& path) {
    if (!fs::exists(path)) {
        throw UsageError(flag + ": no such file " + path);
    }
}

std::uint32_t
parse_m_beta(const std::string& s) {
    if (s == "inf" || s == "none" || s == "unbounded") {
        return kUnboundedMBeta;
    }
    try {
        std::size_t used = 0;
        unsigned long v = std::stoul(s, &used);
        if (used != s.size()) {
            throw std::invalid_argument(s);
        }
        return static_cast<std::uint32_t>(v);
    } catch (const std::exception&) {
        throw UsageError("--m-beta: expected a count or 'inf', got '" + s + "'");
    }
}

/// "10:800:50" (inclusive range plus the end point) or "10,40,100".
std::vector<std::size_t>
parse_efs(const std::string& text) {
    std::vector<std::size_t> out;
    try {
        if (text.find(':') != std::string::npos) {
            std::size_t a = 0;
            std::size_t b = 0;
            std::size_t step = 0;
            char c1 = 0;
            char c2 = 0;
            std::istringstream is(text);
            if (!(is >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || step == 0 || a > b) {
                throw std::invalid_argument(text);
            }
            for (std::size_t e = a; e <= b; e += step) {
                out.push_back(e);
            }
            if (out.back() != b) {
                out.push_back(b);
            }
        } else {
            std::istringstream is(text);
            std::string item;
            while (std::getline(is, item, ',')) {
                out.push_back(std::stoul(item));
            }
        }
    } catch (const std::exception&) {
        throw UsageError("--efs: cannot parse '" + text + "'");
    }
    if (out.empty()) {
        throw UsageError("--efs: empty sweep");
    }
    return out;
}

std::vector<std::string>
split_list(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

struct BuildOptions {
    std::string variant = "acorn-gamma";
    std::uint32_t M = 32;
    std::uint32_t efc = 40;
    std::uint32_t gamma = 12;
    std::string m_beta = "64";
    std::string prune = "acorn-mbeta";
    std::uint32_t compressed_levels = 1;
    std::uint32_t label_attr = 0;
    std::uint64_t seed = 1;
};

void
add_build_options(CLI::App* sub, BuildOptions& o, bool with_variant) {
    if (with_variant) {
        sub->add_option("--variant", o.variant, "hnsw | acorn-gamma | acorn-1")->capture_default_str();
        sub->add_option("--prune", o.prune, "acorn-mbeta | rng-metadata-aware | hnsw-metadata-blind | none")
            ->capture_default_str();
        sub->add_option("--compressed-levels", o.compressed_levels, "Levels pruned after expansion")
            ->capture_default_str();
    }
    sub->add_option("--M", o.M, "Max neighbors per node")->capture_default_str();
    sub->add_option("--efc", o.efc, "Construction beam width")->capture_default_str();
    sub->add_option("--gamma", o.gamma, "Neighbor expansion factor")->capture_default_str();
    sub->add_option("--m-beta", o.m_beta, "Neighbors kept verbatim before pruning, or 'inf'")
        ->capture_default_str();
    sub->add_option("--label-attr", o.label_attr, "Integer label attribute position")->capture_default_str();
    sub->add_option("--build-seed", o.seed, "Level sampling seed")->capture_default_str();
}

BuildParams
to_params(const BuildOptions& o, Variant variant) {
    BuildParams p;
    try {
        switch (variant) {
            case Variant::kHnsw:
                p = BuildParams::hnsw(o.M, o.efc, o.seed);
                break;
            case Variant::kAcorn1:
                p = BuildParams::acorn1(o.M, o.efc, o.seed);
                break;
            case Variant::kAcornGamma:
                p = BuildParams::acorn_gamma(o.M, o.efc, o.gamma, parse_m_beta(o.m_beta), o.seed);
                p.prune = parse_prune_strategy(o.prune);
                p.compressed_levels = o.compressed_levels;
                break;
        }
        p.label_attr = o.label_attr;
        p.validate();
    } catch (const Error& e) {
        throw UsageError(std::string("build parameters: ") + e.what());
    }
    return p;
}

std::vector<HybridQuery>
load_queries(const std::string& path, const Dataset& ds, std::optional<std::size_t> k) {
    auto queries = load_workload(path, ds.dim(), {}, &ds.attributes().dictionary());
    for (HybridQuery& q : queries) {
        q.predicate.validate(ds.attributes().schema());
        if (k) {
            q.k = *k;
        }
    }
    return queries;
}

json
report_json(std::size_t i, const SearchReport& r) {
    return {{"query", i},
            {"ids", r.ids},
            {"distances", r.distances},
            {"route", r.prefiltered() ? "prefilter" : "graph"},
            {"distance_computations", r.counters.distance_computations},
            {"predicate_evaluations", r.counters.predicate_evaluations}};
}

void
emit_results(const std::string& out_path,
             const std::vector<SearchReport>& reports,
             const std::optional<GroundTruth>& gt,
             std::size_t k) {
    std::string text;
    double recall = 0.0;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        text += report_json(i, reports[i]).dump() + "\n";
        if (gt) {
            recall += recall_at_k(gt->results[i], reports[i].ids, k);
        }
    }
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        write_text(out_path, text);
    }
    if (gt && !reports.empty()) {
        std::fprintf(stderr, "recall@%zu %.4f over %zu queries\n", k, recall / reports.size(), reports.size());
    }
}

std::optional<GroundTruth>
load_gt_for(const std::string& path, std::size_t n_queries) {
    if (path.empty()) {
        return std::nullopt;
    }
    GroundTruth gt = load_ground_truth(path);
    if (gt.results.size() != n_queries) {
        throw Error(ErrorCode::kGroundTruthMismatch, "--gt covers " + std::to_string(gt.results.size()) +
                                                         " queries, workload has " + std::to_string(n_queries));
    }
    return gt;
}

Dataset
add_date_column(const Dataset& ds, std::uint64_t seed) {
    const AttributeTable& old = ds.attributes();
    AttributeSchema schema = old.schema();
    schema.push_back({"date", AttributeKind::kDate});
    AttributeTable table(schema);
    std::mt19937_64 rng(seed);
    auto dates = uniform_dates(ds.size(), rng);
    for (NodeId i = 0; i < ds.size(); ++i) {
        AttributeTuple t = old.tuple(i);
        t.emplace_back(DateValue{dates[i]});
        table.append(t);
    }
    table.seal();
    return ds.with_attributes(std::move(table));
}

}  // namespace

int
run_cli(int argc, const char* const* argv) {
    CLI::App app{"Hybrid vector search with predicate-subgraph traversal", "acorn_cli"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML/INI file with option defaults (flags take precedence)");
    app.set_version_flag("--version", kVersion);

    // gen
    struct {
        std::string out;
        std::string kind = "lcps";
        std::size_t n = 100000;
        std::size_t dim = 128;
        std::size_t cardinality = 12;
        std::string mode = "none";
        std::size_t queries = 1000;
        std::size_t k = 10;
        std::uint64_t seed = 1;
        std::string percentiles = "1,25,50,75,99";
        bool no_gt = false;
        MixtureParams mixture;
    } gen;
    CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a dataset, query workload and ground truth");
    gen_cmd->add_option("--out", gen.out, "Output directory")->required();
    gen_cmd->add_option("--kind", gen.kind, "lcps | correlation | selectivity")->capture_default_str();
    gen_cmd->add_option("--n", gen.n, "Number of vectors")->capture_default_str();
    gen_cmd->add_option("--dim", gen.dim, "Vector dimension")->capture_default_str();
    gen_cmd->add_option("--cardinality", gen.cardinality, "Label cardinality (lcps)")->capture_default_str();
    gen_cmd->add_option("--mode", gen.mode, "pos | neg | none (correlation)")->capture_default_str();
    gen_cmd->add_option("--queries", gen.queries, "Queries per workload")->capture_default_str();
    gen_cmd->add_option("--K", gen.k, "Neighbors per query")->capture_default_str();
    gen_cmd->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
    gen_cmd->add_option("--percentiles", gen.percentiles, "Selectivity percentiles (selectivity)")
        ->capture_default_str();
    gen_cmd->add_flag("--no-gt", gen.no_gt, "Skip ground truth");
    gen_cmd->add_option("--clusters", gen.mixture.clusters, "Mixture clusters")->capture_default_str();
    gen_cmd->add_option("--latent-dim", gen.mixture.latent_dim, "Per-cluster latent dimension")
        ->capture_default_str();
    gen_cmd->add_option("--spread-ratio", gen.mixture.intra_inter_ratio, "Intra- over inter-cluster distance")
        ->capture_default_str();

    // build
    struct {
        std::string dataset;
        std::string out;
        std::string stats;
        BuildOptions b;
    } bld;
    CLI::App* build_cmd = app.add_subcommand("build", "Build and save an index");
    build_cmd->add_option("--dataset", bld.dataset, "Dataset stem")->required();
    build_cmd->add_option("--out", bld.out, "Index file")->required();
    build_cmd->add_option("--stats", bld.stats, "Build statistics JSON (default <out>.stats.json)");
    add_build_options(build_cmd, bld.b, true);

    // search
    struct {
        std::string dataset;
        std::string index;
        std::string workload;
        std::string out;
        std::string gt;
        std::size_t efs = 100;
        std::optional<std::size_t> k;
        std::string strategy;
        std::string router = "none";
    } srch;
    CLI::App* search_cmd = app.add_subcommand("search", "Run a workload against a saved index");
    search_cmd->add_option("--dataset", srch.dataset, "Dataset stem")->required();
    search_cmd->add_option("--index", srch.index, "Index file")->required();
    search_cmd->add_option("--workload", srch.workload, "Workload JSONL")->required();
    search_cmd->add_option("--out", srch.out, "Results JSONL (default stdout)");
    search_cmd->add_option("--gt", srch.gt, "Ground truth file; prints recall");
    search_cmd->add_option("--efs", srch.efs, "Search beam width")->capture_default_str();
    search_cmd->add_option("--K", srch.k, "Override the queries' K");
    search_cmd->add_option("--strategy", srch.strategy,
                           "filter-only | compressed-2hop | acorn1-full-expansion | unfiltered");
    search_cmd->add_option("--router", srch.router, "none | exact | sampled")->capture_default_str();

    // baseline
    struct {
        std::string method = "prefilter";
        std::string dataset;
        std::string workload;
        std::string index;
        std::string out;
        std::string gt;
        std::size_t efs = 100;
        std::optional<std::size_t> k;
        BuildOptions b;
    } base;
    CLI::App* baseline_cmd = app.add_subcommand("baseline", "Run pre-filter, post-filter or oracle partitions");
    baseline_cmd->add_option("--method", base.method, "prefilter | postfilter | oracle")->capture_default_str();
    baseline_cmd->add_option("--dataset", base.dataset, "Dataset stem")->required();
    baseline_cmd->add_option("--workload", base.workload, "Workload JSONL")->required();
    baseline_cmd->add_option("--index", base.index, "HNSW index for postfilter (built if absent)");
    baseline_cmd->add_option("--out", base.out, "Results JSONL (default stdout)");
    baseline_cmd->add_option("--gt", base.gt, "Ground truth file; prints recall");
    baseline_cmd->add_option("--efs", base.efs, "Search beam width")->capture_default_str();
    baseline_cmd->add_option("--K", base.k, "Override the queries' K");
    add_build_options(baseline_cmd, base.b, false);

    // bench
    struct {
        std::string dataset;
        std::string workload;
        std::string gt;
        std::string methods = "prefilter,postfilter,oracle,acorn-gamma,acorn-1";
        std::string efs = "10:800:50";
        std::size_t k = 10;
        std::size_t repeats = 1;
        std::string out;
        bool router = false;
        BuildOptions b;
    } bench;
    CLI::App* bench_cmd = app.add_subcommand("bench", "Recall/QPS sweep over several methods");
    bench_cmd->add_option("--dataset", bench.dataset, "Dataset stem")->required();
    bench_cmd->add_option("--workload", bench.workload, "Workload JSONL")->required();
    bench_cmd->add_option("--gt", bench.gt, "Ground truth file (computed if absent)");
    bench_cmd->add_option("--methods", bench.methods, "Comma list: prefilter, postfilter, oracle, acorn-gamma, acorn-1, hnsw")
        ->capture_default_str();
    bench_cmd->add_option("--efs", bench.efs, "Sweep 'from:to:step' or a comma list")->capture_default_str();
    bench_cmd->add_option("--K", bench.k, "Neighbors per query")->capture_default_str();
    bench_cmd->add_option("--repeats", bench.repeats, "Timed passes per row")->capture_default_str();
    bench_cmd->add_option("--out", bench.out, "Output directory")->required();
    bench_cmd->add_flag("--router", bench.router, "Route low-selectivity ACORN-gamma queries to pre-filtering");
    add_build_options(bench_cmd, bench.b, false);

    // inspect
    struct {
        std::string index;
        std::string dataset;
    } insp;
    CLI::App* inspect_cmd = app.add_subcommand("inspect", "Print an index header and per-level statistics");
    inspect_cmd->add_option("--index", insp.index, "Index file")->required();
    inspect_cmd->add_option("--dataset", insp.dataset, "Dataset stem to bind (optional)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Help and version requests exit 0; every other parse failure is a
        // usage error.
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (gen_cmd->parsed()) {
            if (gen.n == 0) {
                throw UsageError("--n: must be positive");
            }
            if (gen.dim == 0) {
                throw UsageError("--dim: must be positive");
            }
            if (gen.k == 0) {
                throw UsageError("--K: must be positive");
            }
            if (gen.kind == "lcps" && gen.cardinality < 2) {
                throw UsageError("--cardinality: must be at least 2, got " + std::to_string(gen.cardinality));
            }
            if (gen.kind != "lcps" && gen.kind != "correlation" && gen.kind != "selectivity") {
                throw UsageError("--kind: expected lcps, correlation or selectivity, got '" + gen.kind + "'");
            }
            std::vector<double> percentiles;
            if (gen.kind == "selectivity") {
                for (const std::string& p : split_list(gen.percentiles)) {
                    try {
                        percentiles.push_back(std::stod(p));
                    } catch (const std::exception&) {
                        throw UsageError("--percentiles: cannot parse '" + p + "'");
                    }
                }
            }
            CorrelationMode mode = CorrelationMode::kNone;
            if (gen.kind == "correlation") {
                try {
                    mode = parse_correlation_mode(gen.mode);
                } catch (const Error&) {
                    throw UsageError("--mode: expected pos, neg or none, got '" + gen.mode + "'");
                }
            }
            fs::create_directories(gen.out);
            const fs::path dir = gen.out;
            GeneratedWorkload w = gen.kind == "correlation"
                                      ? gen_correlation(gen.n, gen.dim, mode, gen.queries, gen.seed, gen.k, gen.mixture)
                                      : gen_lcps(gen.n, gen.dim, gen.cardinality, gen.queries, gen.seed, gen.k,
                                                 gen.mixture);
            std::map<std::string, fs::path> sums;
            Dataset ds = gen.kind == "selectivity" ? add_date_column(w.dataset, gen.seed ^ 0x5bd1e995ULL)
                                                   : std::move(w.dataset);
            save_dataset(ds, dir / "data");
            sums["vectors"] = dir / "data.fvecs";
            sums["schema"] = dir / "data.schema.json";
            sums["attributes"] = dir / "data.attrs.jsonl";
            const KeywordDictionary* dict = &ds.attributes().dictionary();
            auto emit = [&](const std::string& suffix, const std::vector<HybridQuery>& queries) {
                fs::path qpath = dir / ("queries" + suffix + ".jsonl");
                save_workload(queries, qpath, dict);
                sums["queries" + suffix] = qpath;
                if (!gen.no_gt) {
                    fs::path gpath = dir / ("gt" + suffix + ".bin");
                    save_ground_truth(ground_truth(ds, queries, gen.k), gpath);
                    sums["gt" + suffix] = gpath;
                }
            };
            json extra = json::object();
            if (gen.kind == "selectivity") {
                std::vector<double> targets;
                for (double p : percentiles) {
                    targets.push_back(percentile_target(p));
                }
                std::vector<float> pool;
                for (const HybridQuery& q : w.queries) {
                    pool.insert(pool.end(), q.vector.begin(), q.vector.end());
                }
                const std::size_t date_attr = ds.attributes().schema().size() - 1;
                auto by_target = gen_selectivity_sweep(ds, date_attr, targets, pool, gen.queries, gen.seed, gen.k);
                json files = json::object();
                for (std::size_t i = 0; i < percentiles.size(); ++i) {
                    char name[32];
                    std::snprintf(name, sizeof(name), "_p%g", percentiles[i]);
                    emit(name, by_target.at(targets[i]));
                    files[name + 1] = {{"percentile", percentiles[i]}, {"target_selectivity", targets[i]}};
                }
                extra["workloads"] = files;
            } else {
                emit("", w.queries);
                if (gen.kind == "correlation") {
                    extra["query_correlation"] = query_correlation(ds, w.queries, 10, gen.seed);
                }
            }
            extra["dataset_checksum"] = hex64(ds.checksum());
            write_manifest(dir, *gen_cmd, sums, extra);
            std::fprintf(stderr, "wrote %zu vectors to %s\n", ds.size(), gen.out.c_str());
            return 0;
        }

        if (build_cmd->parsed()) {
            require_dataset(bld.dataset);
            Variant variant;
            try {
                variant = parse_variant(bld.b.variant);
                parse_prune_strategy(bld.b.prune);
            } catch (const Error& e) {
                throw UsageError(e.what());
            }
            BuildParams params = to_params(bld.b, variant);
            Dataset ds = load_dataset(bld.dataset);
            GraphIndex index;
            BuildMeasurement m = measure_build(ds, params, &index);
            save_index(index, bld.out);
            json stats = m.to_json();
            stats["variant"] = variant_name(variant);
            stats["params"] = {{"M", params.M},
                               {"efc", params.efc},
                               {"gamma", params.gamma},
                               {"m_beta", params.m_beta},
                               {"prune", prune_strategy_name(params.prune)},
                               {"compressed_levels", params.compressed_levels},
                               {"seed", params.seed}};
            stats["dataset_checksum"] = hex64(ds.checksum());
            stats["index_fnv1a64"] = file_checksum(bld.out);
            write_text(bld.stats.empty() ? bld.out + ".stats.json" : bld.stats, stats.dump(2) + "\n");
            std::fprintf(stderr, "built %s over %zu vectors in %.2fs (%llu bytes)\n", variant_name(variant).data(),
                         ds.size(), m.tti_seconds, static_cast<unsigned long long>(m.index_bytes));
            return 0;
        }

        if (search_cmd->parsed()) {
            require_dataset(srch.dataset);
            require_file("--index", srch.index);
            require_file("--workload", srch.workload);
            if (srch.router != "none" && srch.router != "exact" && srch.router != "sampled") {
                throw UsageError("--router: expected none, exact or sampled");
            }
            std::optional<Strategy> strategy;
            if (!srch.strategy.empty()) {
                try {
                    strategy = parse_strategy(srch.strategy);
                } catch (const Error& e) {
                    throw UsageError(std::string("--strategy: ") + e.what());
                }
            }
            Dataset ds = load_dataset(srch.dataset);
            GraphIndex index = load_index(srch.index, ds);
            auto queries = load_queries(srch.workload, ds, srch.k);
            auto gt = load_gt_for(srch.gt, queries.size());
            std::optional<CostRouter> router;
            if (srch.router != "none") {
                router.emplace(index.params().gamma,
                               srch.router == "exact" ? CostRouter::Source::kExact : CostRouter::Source::kSampled,
                               1000, index.params().seed);
            }
            const Strategy s = strategy.value_or(default_strategy(index.params().variant));
            std::vector<SearchReport> reports;
            for (const HybridQuery& q : queries) {
                reports.push_back(
                    hybrid_search(index, q, {q.k, std::max(srch.efs, q.k), s}, router ? &*router : nullptr));
            }
            emit_results(srch.out, reports, gt, queries.empty() ? 10 : queries.front().k);
            return 0;
        }

        if (baseline_cmd->parsed()) {
            require_dataset(base.dataset);
            require_file("--workload", base.workload);
            if (base.method != "prefilter" && base.method != "postfilter" && base.method != "oracle") {
                throw UsageError("--method: expected prefilter, postfilter or oracle, got '" + base.method + "'");
            }
            if (!base.index.empty()) {
                require_file("--index", base.index);
            }
            BuildParams hp = to_params(base.b, Variant::kHnsw);
            Dataset ds = load_dataset(base.dataset);
            auto queries = load_queries(base.workload, ds, base.k);
            auto gt = load_gt_for(base.gt, queries.size());
            std::vector<SearchReport> reports;
            std::optional<GraphIndex> hnsw;
            std::optional<OraclePartitionSet> ops;
            Method method;
            if (base.method == "prefilter") {
                method = prefilter_method(ds);
            } else if (base.method == "postfilter") {
                hnsw = base.index.empty() ? build(ds, hp) : load_index(base.index, ds);
                method = postfilter_method(*hnsw);
            } else {
                std::vector<Predicate> labels;
                for (const HybridQuery& q : queries) {
                    labels.push_back(q.predicate);
                }
                ops = oracle_build(ds, labels, hp);
                method = oracle_method(*ops);
            }
            for (const HybridQuery& q : queries) {
                reports.push_back(method.run(q, std::max(base.efs, q.k)));
            }
            emit_results(base.out, reports, gt, queries.empty() ? 10 : queries.front().k);
            return 0;
        }

        if (bench_cmd->parsed()) {
            require_dataset(bench.dataset);
            require_file("--workload", bench.workload);
            if (!bench.gt.empty()) {
                require_file("--gt", bench.gt);
            }
            SweepOptions options;
            options.efs = parse_efs(bench.efs);
            options.k = bench.k;
            options.repeats = bench.repeats;
            if (bench.k == 0) {
                throw UsageError("--K: must be positive");
            }
            const std::set<std::string> known = {"prefilter", "postfilter", "oracle", "acorn-gamma", "acorn-1", "hnsw"};
            std::vector<std::string> methods = split_list(bench.methods);
            for (const std::string& m : methods) {
                if (!known.count(m)) {
                    throw UsageError("--methods: unknown method '" + m + "'");
                }
            }
            BuildParams gp = to_params(bench.b, Variant::kAcornGamma);
            BuildParams hp = to_params(bench.b, Variant::kHnsw);
            BuildParams ap = to_params(bench.b, Variant::kAcorn1);
            Dataset ds = load_dataset(bench.dataset);
            auto queries = load_queries(bench.workload, ds, bench.k);
            GroundTruth gt = bench.gt.empty() ? ground_truth(ds, queries, bench.k) : load_ground_truth(bench.gt);
            fs::create_directories(bench.out);
            const fs::path dir = bench.out;

            std::vector<Predicate> distinct;
            {
                std::set<std::string> seen;
                for (const HybridQuery& q : queries) {
                    if (seen.insert(q.predicate.to_json().dump()).second) {
                        distinct.push_back(q.predicate);
                    }
                }
            }
            const std::size_t kQualityPredicates = 12;
            json build_stats = json::object();
            json quality = json::object();
            auto analyze = [&](const std::string& name, const GraphIndex& index) {
                json per = json::array();
                for (std::size_t i = 0; i < distinct.size() && i < kQualityPredicates; ++i) {
                    json entry = graph_quality(predicate_subgraph(index, distinct[i])).to_json();
                    entry["predicate"] = distinct[i].to_json(&ds.attributes().dictionary());
                    entry["selectivity"] = exact_selectivity(distinct[i], ds).value;
                    per.push_back(entry);
                }
                quality[name] = {{"full", graph_quality(full_view(index)).to_json()}, {"predicates", per}};
            };

            std::optional<GraphIndex> hnsw;
            std::optional<GraphIndex> gamma;
            std::optional<GraphIndex> acorn1;
            std::optional<OraclePartitionSet> ops;
            std::optional<CostRouter> router;
            SweepResult result;
            for (const std::string& m : methods) {
                if (m == "prefilter") {
                    sweep(prefilter_method(ds), queries, gt, options, result);
                } else if (m == "postfilter" || m == "hnsw") {
                    if (!hnsw) {
                        GraphIndex index;
                        build_stats["hnsw"] = measure_build(ds, hp, &index).to_json();
                        hnsw = std::move(index);
                        analyze("hnsw", *hnsw);
                    }
                    if (m == "postfilter") {
                        sweep(postfilter_method(*hnsw), queries, gt, options, result);
                    } else {
                        sweep(graph_method("hnsw", *hnsw, Strategy::kFilterOnly), queries, gt, options, result);
                    }
                } else if (m == "oracle") {
                    auto start = std::chrono::steady_clock::now();
                    ops = oracle_build(ds, distinct, hp);
                    double tti = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                    std::uint64_t bytes = 0;
                    json parts = json::object();
                    for (const auto& [label, part] : ops->partitions()) {
                        if (part.index) {
                            bytes += serialize_index(*part.index).size();
                            parts[std::to_string(label)] = graph_quality(full_view(*part.index)).to_json();
                        }
                    }
                    build_stats["oracle"] = {{"tti_seconds", tti}, {"index_bytes", bytes}};
                    quality["oracle"] = {{"partitions", parts}};
                    sweep(oracle_method(*ops), queries, gt, options, result);
                } else if (m == "acorn-gamma") {
                    GraphIndex index;
                    build_stats["acorn-gamma"] = measure_build(ds, gp, &index).to_json();
                    gamma = std::move(index);
                    analyze("acorn-gamma", *gamma);
                    if (bench.router) {
                        router.emplace(gp.gamma, CostRouter::Source::kSampled, 1000, gp.seed);
                    }
                    sweep(graph_method("acorn-gamma", *gamma, Strategy::kCompressed2Hop, router ? &*router : nullptr),
                          queries, gt, options, result);
                } else if (m == "acorn-1") {
                    GraphIndex index;
                    build_stats["acorn-1"] = measure_build(ds, ap, &index).to_json();
                    acorn1 = std::move(index);
                    analyze("acorn-1", *acorn1);
                    sweep(graph_method("acorn-1", *acorn1, Strategy::kAcorn1FullExpansion), queries, gt, options,
                          result);
                }
            }
            write_text(dir / "sweep.csv", result.to_csv());
            write_text(dir / "sweep.json", result.to_json().dump(2) + "\n");
            write_text(dir / "build_stats.json", build_stats.dump(2) + "\n");
            write_text(dir / "graph_quality.json", quality.dump(2) + "\n");
            std::map<std::string, fs::path> sums = {{"vectors", fs::path(bench.dataset + ".fvecs")},
                                                    {"attributes", fs::path(bench.dataset + ".attrs.jsonl")},
                                                    {"workload", fs::path(bench.workload)}};
            write_manifest(dir, *bench_cmd, sums, {{"dataset_checksum", hex64(ds.checksum())}});
            std::cout << result.to_csv();
            return 0;
        }

        if (inspect_cmd->parsed()) {
            require_file("--index", insp.index);
            auto bytes = read_file(insp.index);
            IndexHeader h = read_index_header(bytes);
            Dataset ds;
            if (!insp.dataset.empty()) {
                require_dataset(insp.dataset);
                ds = load_dataset(insp.dataset);
            }
            GraphIndex index = deserialize_index(bytes, ds);
            json levels = json::array();
            auto degrees = index.mean_degrees();
            for (std::uint32_t l = 0; l < index.num_levels(); ++l) {
                std::size_t max_degree = 0;
                std::size_t edges = 0;
                for (NodeId v : index.level_nodes(l)) {
                    max_degree = std::max(max_degree, index.list(v, l).size());
                    edges += index.list(v, l).size();
                }
                levels.push_back({{"level", l},
                                  {"nodes", index.level_nodes(l).size()},
                                  {"edges", edges},
                                  {"mean_degree", degrees[l]},
                                  {"max_degree", max_degree},
                                  {"cap", index.level_cap(l)}});
            }
            json out = {{"version", h.version},
                        {"variant", variant_name(h.params.variant)},
                        {"M", h.params.M},
                        {"efc", h.params.efc},
                        {"gamma", h.params.gamma},
                        {"m_beta", h.params.m_beta},
                        {"prune", prune_strategy_name(h.params.prune)},
                        {"compressed_levels", h.params.compressed_levels},
                        {"seed", h.params.seed},
                        {"n", h.n},
                        {"dim", h.dim},
                        {"max_level", h.max_level},
                        {"entry_point", h.entry_point},
                        {"file_bytes", bytes.size()},
                        {"levels", levels}};
            std::cout << out.dump(2) << "\n";
            return 0;
        }
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

int
run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("acorn_cli");
    for (const std::string& a : args) {
        argv.push_back(a.c_str());
    }
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace acorn
