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
#include "acorn/baselines.h"

#include <algorithm>
#include <cmath>
#include <queue>

#include "acorn/error.h"
#include "acorn/random.h"

namespace acorn {

CostRouter::CostRouter(std::uint32_t gamma, Source source, std::size_t sample_size, std::uint64_t seed)
    : gamma_(gamma), source_(source), sample_size_(sample_size), seed_(seed) {
    if (gamma == 0) {
        throw Error(ErrorCode::kInvalidArgument, "router gamma must be positive");
    }
    if (source == Source::kSampled && sample_size == 0) {
        throw Error(ErrorCode::kInvalidArgument, "router sample size must be positive");
    }
}

double
CostRouter::estimate(const Predicate& p, const Dataset& ds) const {
    if (source_ == Source::kExact) {
        return exact_selectivity(p, ds).value;
    }
    if (ds.size() == 0) {
        return 0.0;
    }
    std::vector<std::uint32_t> rows;
    {
        std::lock_guard<std::mutex> lock(mu_);
        if (sampled_n_ != ds.size()) {
            std::mt19937_64 rng(seed_);
            sample_ = sample_without_replacement(ds.size(), sample_size_, rng);
            sampled_n_ = ds.size();
        }
        rows = sample_;
    }
    std::size_t count = 0;
    for (NodeId r : rows) {
        count += p.matches(ds.attributes(), r) ? 1 : 0;
    }
    return static_cast<double>(count) / static_cast<double>(rows.size());
}

Route
route(const CostRouter& router, const HybridQuery& q, const Dataset& ds) {
    return router.decide(router.estimate(q.predicate, ds));
}

std::vector<Neighbor>
prefilter_search(const Dataset& ds, const HybridQuery& q, SearchCounters& counters) {
    if (q.vector.size() != ds.dim()) {
        throw Error(ErrorCode::kDimensionMismatch, "query dimension does not match dataset");
    }
    q.predicate.validate(ds.attributes().schema());
    std::priority_queue<Neighbor> best;  // farthest on top
    for (NodeId i = 0; i < ds.size(); ++i) {
        ++counters.predicate_evaluations;
        if (!q.predicate.matches(ds.attributes(), i)) {
            continue;
        }
        Neighbor nb{i, ds.distance_to(q.vector.data(), i)};
        ++counters.distance_computations;
        if (best.size() < q.k) {
            best.push(nb);
        } else if (q.k > 0 && nb < best.top()) {
            best.pop();
            best.push(nb);
        }
    }
    std::vector<Neighbor> out(best.size());
    for (std::size_t i = out.size(); i-- > 0;) {
        out[i] = best.top();
        best.pop();
    }
    return out;
}

std::size_t
postfilter_fanout(std::size_t k, double selectivity, std::size_t n) {
    double want = std::ceil(static_cast<double>(k) / selectivity);
    if (!(want < static_cast<double>(n))) {
        return n;
    }
    return static_cast<std::size_t>(want);
}

std::vector<Neighbor>
postfilter_search(const GraphIndex& index,
                  const HybridQuery& q,
                  std::size_t efs,
                  double selectivity,
                  SearchCounters& counters) {
    if (!(selectivity > 0.0 && selectivity <= 1.0)) {
        throw Error(ErrorCode::kInvalidArgument, "post-filter selectivity must lie in (0, 1]");
    }
    const Dataset& ds = index.dataset();
    if (q.vector.size() != ds.dim()) {
        throw Error(ErrorCode::kDimensionMismatch, "query dimension does not match dataset");
    }
    q.predicate.validate(ds.attributes().schema());
    if (q.k == 0) {
        throw Error(ErrorCode::kInvalidK, "K must be positive");
    }
    std::size_t fanout = std::max<std::size_t>(1, postfilter_fanout(q.k, selectivity, ds.size()));
    auto found = unfiltered_search(index, q.vector.data(), fanout, std::max(efs, fanout), counters);
    std::vector<Neighbor> out;
    for (const Neighbor& nb : found) {
        if (out.size() >= q.k) {
            break;
        }
        ++counters.predicate_evaluations;
        if (q.predicate.matches(ds.attributes(), nb.id)) {
            out.push_back(nb);
        }
    }
    return out;
}

const OraclePartitionSet::Partition*
OraclePartitionSet::find(std::int64_t label) const {
    auto it = partitions_.find(label);
    return it == partitions_.end() ? nullptr : &it->second;
}

OraclePartitionSet
oracle_build(const Dataset& ds, std::span<const Predicate> labels, const BuildParams& params) {
    OraclePartitionSet out;
    if (labels.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "oracle partitions need at least one label");
    }
    out.attr_ = labels.front().op() == Predicate::Op::kEquals ? labels.front().attr() : 0;
    for (const Predicate& p : labels) {
        if (p.op() != Predicate::Op::kEquals || p.attr() != out.attr_) {
            throw Error(ErrorCode::kUnsupportedSchema,
                        "oracle partitions need equality predicates over one attribute");
        }
    }
    const AttributeSchema& schema = ds.attributes().schema();
    if (out.attr_ >= schema.size() || (schema[out.attr_].kind != AttributeKind::kInteger &&
                                       schema[out.attr_].kind != AttributeKind::kDate)) {
        throw Error(ErrorCode::kUnsupportedSchema, "label attribute must be an integer");
    }
    out.params_ = BuildParams::hnsw(params.M, params.efc, params.seed);
    for (const Predicate& p : labels) {
        if (out.partitions_.count(p.lo()) != 0) {
            continue;
        }
        OraclePartitionSet::Partition part;
        part.ids = passing_ids(p, ds);
        if (!part.ids.empty()) {
            part.index.emplace(build(ds.subset(part.ids), out.params_));
        }
        out.partitions_.emplace(p.lo(), std::move(part));
    }
    return out;
}

std::vector<Neighbor>
oracle_search(const OraclePartitionSet& ops,
              const HybridQuery& q,
              std::size_t k,
              std::size_t efs,
              SearchCounters& counters) {
    const Predicate& p = q.predicate;
    const OraclePartitionSet::Partition* part = nullptr;
    if (p.op() == Predicate::Op::kEquals && p.attr() == ops.attr()) {
        part = ops.find(p.lo());
    }
    if (part == nullptr) {
        throw Error(ErrorCode::kUnknownLabel, "no oracle partition for this predicate");
    }
    if (!part->index) {
        return {};
    }
    auto found = unfiltered_search(*part->index, q.vector.data(), k, efs, counters);
    for (Neighbor& nb : found) {
        nb.id = part->ids[nb.id];
    }
    return found;
}

}  // namespace acorn
