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
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "acorn/build.h"
#include "acorn/search.h"

namespace acorn {

/// Routes a query to pre-filtering when its estimated selectivity is at most
/// 1/gamma, otherwise to graph search.
class CostRouter {
public:
    enum class Source { kExact, kSampled };

    explicit CostRouter(std::uint32_t gamma,
                        Source source = Source::kSampled,
                        std::size_t sample_size = 1000,
                        std::uint64_t seed = 0);

    double
    threshold() const {
        return 1.0 / static_cast<double>(gamma_);
    }

    Source
    source() const {
        return source_;
    }

    /// Selectivity of p on ds by exact scan or over a fixed seeded sample of
    /// rows (drawn once per dataset size and reused).
    double
    estimate(const Predicate& p, const Dataset& ds) const;

    Route
    decide(double selectivity) const {
        return selectivity <= threshold() ? Route::kPrefilter : Route::kGraphSearch;
    }

private:
    std::uint32_t gamma_;
    Source source_;
    std::size_t sample_size_;
    std::uint64_t seed_;
    mutable std::mutex mu_;
    mutable std::size_t sampled_n_ = 0;
    mutable std::vector<std::uint32_t> sample_;
};

Route
route(const CostRouter& router, const HybridQuery& q, const Dataset& ds);

/// Exact K nearest passers by linear scan (ranking distances, ascending).
std::vector<Neighbor>
prefilter_search(const Dataset& ds, const HybridQuery& q, SearchCounters& counters);

/// Unfiltered HNSW over-search for ceil(K/s) candidates (capped at n) with
/// ef = max(efs, that count), then the predicate filter and truncation to K.
std::vector<Neighbor>
postfilter_search(const GraphIndex& index,
                  const HybridQuery& q,
                  std::size_t efs,
                  double selectivity,
                  SearchCounters& counters);

/// Unfiltered top-K' from the post-filter over-search, before filtering.
std::size_t
postfilter_fanout(std::size_t k, double selectivity, std::size_t n);

/// One HNSW index per equality label over a single integer attribute.
class OraclePartitionSet {
public:
    struct Partition {
        std::vector<NodeId> ids;  // local id -> global id
        std::optional<GraphIndex> index;
    };

    std::size_t
    attr() const {
        return attr_;
    }

    const BuildParams&
    params() const {
        return params_;
    }

    const std::map<std::int64_t, Partition>&
    partitions() const {
        return partitions_;
    }

    const Partition*
    find(std::int64_t label) const;

private:
    friend OraclePartitionSet
    oracle_build(const Dataset&, std::span<const Predicate>, const BuildParams&);

    std::size_t attr_ = 0;
    BuildParams params_;
    std::map<std::int64_t, Partition> partitions_;
};

/// `labels` must all be equals predicates over one integer attribute; anything
/// else throws kUnsupportedSchema. Partition indices use HNSW with params'
/// M, efc and seed.
OraclePartitionSet
oracle_build(const Dataset& ds, std::span<const Predicate> labels, const BuildParams& params);

/// Unfiltered search on the partition matching q's equality predicate; ids
/// are global. Throws kUnknownLabel.
std::vector<Neighbor>
oracle_search(const OraclePartitionSet& ops,
              const HybridQuery& q,
              std::size_t k,
              std::size_t efs,
              SearchCounters& counters);

}  // namespace acorn
