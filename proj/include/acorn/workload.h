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
#include <random>
#include <span>
#include <vector>

#include "acorn/dataset.h"
#include "acorn/predicate.h"
#include "acorn/search.h"

namespace acorn {

/// Gaussian mixture whose clusters each live near a random low-dimensional
/// affine subspace: x = center_c + A_c z + noise, z ~ N(0, spread^2 I_latent).
struct MixtureParams {
    std::size_t clusters = 16;
    std::size_t latent_dim = 32;
    double center_scale = 1.0;
    /// Mean intra-cluster distance over mean distance between cluster
    /// centers. Overlapping clusters keep nearest-neighbor graphs connected
    /// while still giving correlated workloads a measurable signal.
    double intra_inter_ratio = 2.5;
    /// Share of the intra-cluster variance given to isotropic noise.
    double noise_share = 0.03;
};

class VectorGenerator {
public:
    VectorGenerator(std::size_t dim, std::uint64_t seed, MixtureParams params = {});

    std::size_t
    dim() const {
        return dim_;
    }

    std::size_t
    clusters() const {
        return params_.clusters;
    }

    /// Appends one vector from `cluster` to `out`.
    void
    draw(std::size_t cluster, std::mt19937_64& rng, std::vector<float>& out) const;

    /// n vectors with uniformly chosen clusters; cluster ids go to `cluster_of`.
    std::vector<float>
    draw_many(std::size_t n, std::mt19937_64& rng, std::vector<std::uint32_t>* cluster_of) const;

private:
    std::size_t dim_;
    MixtureParams params_;
    double spread_ = 0.0;
    double noise_ = 0.0;
    std::vector<float> centers_;  // clusters x dim
    std::vector<float> bases_;    // clusters x dim x latent
};

struct GeneratedWorkload {
    Dataset dataset;
    std::vector<HybridQuery> queries;
    std::vector<std::uint32_t> cluster_of;        // per dataset row
    std::vector<std::uint32_t> query_cluster_of;  // per query
};

/// Labels uniform on 1..cardinality in attribute 0 ("label"); queries are
/// held-out vectors with equals(random label). Throws kInvalidArgument when
/// cardinality < 2.
GeneratedWorkload
gen_lcps(std::size_t n,
         std::size_t dim,
         std::size_t cardinality,
         std::size_t n_queries,
         std::uint64_t seed,
         std::size_t k = 10,
         MixtureParams mixture = {});

enum class CorrelationMode { kPositive, kNegative, kNone };

std::string_view
correlation_mode_name(CorrelationMode m);
CorrelationMode
parse_correlation_mode(std::string_view name);

/// Keyword attribute 0 ("tags") over a universe of 2*clusters words: every
/// entity holds one cluster word (its own cluster's, or a uniformly random one
/// for kNone) plus two distinct noise words. Each query is drawn inside a
/// uniformly chosen cluster A and asks contains-any of two cluster words:
/// A's and another (positive), two words other than A's (negative), or two
/// random words (none). Vectors depend only on the seed, not on the mode.
GeneratedWorkload
gen_correlation(std::size_t n,
                std::size_t dim,
                CorrelationMode mode,
                std::size_t n_queries,
                std::uint64_t seed,
                std::size_t k = 10,
                MixtureParams mixture = {});

/// Selectivity targets for the percentiles 1, 25, 50, 75, 99.
inline constexpr double kDefaultSelectivityTargets[] = {0.0127, 0.0485, 0.1215, 0.2529, 0.6164};

/// Target selectivity for a percentile: log-linear interpolation between the
/// default anchors (clamped below percentile 1); percentile 100 maps to 1.0.
double
percentile_target(double percentile);

/// For each target selectivity, queries with a between-window over the
/// integer or date attribute `attr` covering round(target * n) sorted values,
/// accepted only if the exact selectivity is within 10% (relative) of the
/// target. Target 1.0 gives always-true. Query vectors cycle through
/// `query_vectors`. Throws kUnreachableSelectivity, kSchemaMismatch.
std::map<double, std::vector<HybridQuery>>
gen_selectivity_sweep(const Dataset& ds,
                      std::size_t attr,
                      std::span<const double> targets,
                      std::span<const float> query_vectors,
                      std::size_t n_queries,
                      std::uint64_t seed,
                      std::size_t k = 10);

/// Days since epoch uniform over 1900-01-01 .. 2020-12-31.
std::vector<std::int64_t>
uniform_dates(std::size_t n, std::mt19937_64& rng);

/// Exact top-K passers per query with reported distances.
struct GroundTruth {
    std::size_t k = 0;
    std::vector<std::vector<Neighbor>> results;
};

GroundTruth
ground_truth(const Dataset& ds, std::span<const HybridQuery> queries, std::size_t k);

}  // namespace acorn
