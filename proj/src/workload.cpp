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
#include "acorn/workload.h"

#include <algorithm>
#include <cmath>

#include "acorn/error.h"
#include "acorn/parallel.h"
#include "acorn/random.h"

namespace acorn {

namespace {

std::uint64_t
stream_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finalizer over (seed, stream)
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

enum Stream : std::uint64_t {
    kMixtureStream = 0,
    kDataStream = 1,
    kAttributeStream = 2,
    kQueryStream = 3,
};

void
check_sizes(std::size_t n, std::size_t dim) {
    if (n == 0) {
        throw Error(ErrorCode::kInvalidArgument, "n must be positive");
    }
    if (dim == 0) {
        throw Error(ErrorCode::kInvalidArgument, "dim must be positive");
    }
}

}  // namespace

VectorGenerator::VectorGenerator(std::size_t dim, std::uint64_t seed, MixtureParams params)
    : dim_(dim), params_(params) {
    if (dim == 0 || params.clusters == 0 || params.latent_dim == 0) {
        throw Error(ErrorCode::kInvalidArgument, "mixture needs positive dim, clusters, latent_dim");
    }
    const std::size_t latent = std::min(params.latent_dim, dim);
    params_.latent_dim = latent;
    const double s2 = params.center_scale * params.center_scale;
    const double intra2 = params.intra_inter_ratio * params.intra_inter_ratio * dim * s2;
    noise_ = std::sqrt(params.noise_share * intra2 / dim);
    spread_ = std::sqrt((1.0 - params.noise_share) * intra2 / latent);

    std::mt19937_64 rng(stream_seed(seed, kMixtureStream));
    std::normal_distribution<double> gauss(0.0, 1.0);
    centers_.resize(params.clusters * dim);
    for (auto& c : centers_) {
        c = static_cast<float>(gauss(rng) * params.center_scale);
    }
    bases_.resize(params.clusters * dim * latent);
    std::vector<double> basis(dim * latent);
    for (std::size_t k = 0; k < params.clusters; ++k) {
        for (auto& b : basis) {
            b = gauss(rng);
        }
        // Gram-Schmidt over the latent columns.
        for (std::size_t j = 0; j < latent; ++j) {
            for (std::size_t i = 0; i < j; ++i) {
                double dot = 0.0;
                for (std::size_t r = 0; r < dim; ++r) {
                    dot += basis[r * latent + j] * basis[r * latent + i];
                }
                for (std::size_t r = 0; r < dim; ++r) {
                    basis[r * latent + j] -= dot * basis[r * latent + i];
                }
            }
            double norm = 0.0;
            for (std::size_t r = 0; r < dim; ++r) {
                norm += basis[r * latent + j] * basis[r * latent + j];
            }
            norm = std::sqrt(norm);
            for (std::size_t r = 0; r < dim; ++r) {
                basis[r * latent + j] /= norm;
            }
        }
        for (std::size_t i = 0; i < basis.size(); ++i) {
            bases_[k * dim * latent + i] = static_cast<float>(basis[i]);
        }
    }
}

void
VectorGenerator::draw(std::size_t cluster, std::mt19937_64& rng, std::vector<float>& out) const {
    const std::size_t latent = params_.latent_dim;
    std::normal_distribution<double> gauss(0.0, 1.0);
    double z[256];
    for (std::size_t j = 0; j < latent && j < 256; ++j) {
        z[j] = gauss(rng) * spread_;
    }
    const float* center = centers_.data() + cluster * dim_;
    const float* basis = bases_.data() + cluster * dim_ * latent;
    for (std::size_t r = 0; r < dim_; ++r) {
        double v = center[r] + gauss(rng) * noise_;
        for (std::size_t j = 0; j < latent; ++j) {
            v += basis[r * latent + j] * z[j];
        }
        out.push_back(static_cast<float>(v));
    }
}

std::vector<float>
VectorGenerator::draw_many(std::size_t n,
                           std::mt19937_64& rng,
                           std::vector<std::uint32_t>* cluster_of) const {
    std::vector<float> out;
    out.reserve(n * dim_);
    if (cluster_of != nullptr) {
        cluster_of->clear();
    }
    for (std::size_t i = 0; i < n; ++i) {
        auto c = static_cast<std::uint32_t>(uniform_below(rng, params_.clusters));
        if (cluster_of != nullptr) {
            cluster_of->push_back(c);
        }
        draw(c, rng, out);
    }
    return out;
}

GeneratedWorkload
gen_lcps(std::size_t n,
         std::size_t dim,
         std::size_t cardinality,
         std::size_t n_queries,
         std::uint64_t seed,
         std::size_t k,
         MixtureParams mixture) {
    if (cardinality < 2) {
        throw Error(ErrorCode::kInvalidArgument,
                    "cardinality must be at least 2 (got " + std::to_string(cardinality) + ")");
    }
    check_sizes(n, dim);
    VectorGenerator gen(dim, seed, mixture);
    GeneratedWorkload out;
    std::mt19937_64 data_rng(stream_seed(seed, kDataStream));
    std::vector<float> vectors = gen.draw_many(n, data_rng, &out.cluster_of);

    std::mt19937_64 attr_rng(stream_seed(seed, kAttributeStream));
    AttributeTable table({{"label", AttributeKind::kInteger}});
    for (std::size_t i = 0; i < n; ++i) {
        table.append({static_cast<std::int64_t>(1 + uniform_below(attr_rng, cardinality))});
    }
    out.dataset = Dataset(dim, std::move(vectors), std::move(table));

    std::mt19937_64 query_rng(stream_seed(seed, kQueryStream));
    std::vector<float> qv = gen.draw_many(n_queries, query_rng, &out.query_cluster_of);
    for (std::size_t q = 0; q < n_queries; ++q) {
        HybridQuery hq;
        hq.vector.assign(qv.begin() + q * dim, qv.begin() + (q + 1) * dim);
        hq.predicate = Predicate::equals(
            0, static_cast<std::int64_t>(1 + uniform_below(query_rng, cardinality)));
        hq.k = k;
        out.queries.push_back(std::move(hq));
    }
    return out;
}

std::string_view
correlation_mode_name(CorrelationMode m) {
    switch (m) {
        case CorrelationMode::kPositive:
            return "pos";
        case CorrelationMode::kNegative:
            return "neg";
        case CorrelationMode::kNone:
            return "none";
    }
    return "?";
}

CorrelationMode
parse_correlation_mode(std::string_view name) {
    for (CorrelationMode m :
         {CorrelationMode::kPositive, CorrelationMode::kNegative, CorrelationMode::kNone}) {
        if (correlation_mode_name(m) == name) {
            return m;
        }
    }
    throw Error(ErrorCode::kInvalidArgument,
                "unknown correlation mode '" + std::string(name) + "' (pos, neg, none)");
}

GeneratedWorkload
gen_correlation(std::size_t n,
                std::size_t dim,
                CorrelationMode mode,
                std::size_t n_queries,
                std::uint64_t seed,
                std::size_t k,
                MixtureParams mixture) {
    check_sizes(n, dim);
    if (mixture.clusters < 3) {
        throw Error(ErrorCode::kInvalidArgument, "correlation workloads need at least 3 clusters");
    }
    VectorGenerator gen(dim, seed, mixture);
    const std::size_t clusters = mixture.clusters;
    GeneratedWorkload out;
    std::mt19937_64 data_rng(stream_seed(seed, kDataStream));
    std::vector<float> vectors = gen.draw_many(n, data_rng, &out.cluster_of);

    AttributeTable table({{"tags", AttributeKind::kKeywords}});
    std::vector<std::uint32_t> cluster_word(clusters);
    std::vector<std::uint32_t> noise_word(clusters);
    for (std::size_t c = 0; c < clusters; ++c) {
        cluster_word[c] = table.dictionary().intern("cluster" + std::to_string(c));
    }
    for (std::size_t c = 0; c < clusters; ++c) {
        noise_word[c] = table.dictionary().intern("noise" + std::to_string(c));
    }
    std::mt19937_64 attr_rng(stream_seed(seed, kAttributeStream));
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t home = out.cluster_of[i];
        if (mode == CorrelationMode::kNone) {
            home = uniform_below(attr_rng, clusters);
        }
        std::size_t a = uniform_below(attr_rng, clusters);
        std::size_t b = uniform_below(attr_rng, clusters - 1);
        if (b >= a) {
            ++b;
        }
        KeywordSet set{{cluster_word[home], noise_word[a], noise_word[b]}};
        std::sort(set.codes.begin(), set.codes.end());
        table.append({set});
    }
    out.dataset = Dataset(dim, std::move(vectors), std::move(table));

    std::mt19937_64 query_rng(stream_seed(seed, kQueryStream));
    for (std::size_t q = 0; q < n_queries; ++q) {
        auto home = static_cast<std::uint32_t>(uniform_below(query_rng, clusters));
        HybridQuery hq;
        gen.draw(home, query_rng, hq.vector);
        std::size_t w1 = 0;
        std::size_t w2 = 0;
        auto other_than = [&](std::size_t excluded) {
            std::size_t r = uniform_below(query_rng, clusters - 1);
            return r >= excluded ? r + 1 : r;
        };
        switch (mode) {
            case CorrelationMode::kPositive:
                w1 = home;
                w2 = other_than(home);
                break;
            case CorrelationMode::kNegative: {
                w1 = other_than(home);
                do {
                    w2 = other_than(home);
                } while (w2 == w1);
                break;
            }
            case CorrelationMode::kNone:
                w1 = uniform_below(query_rng, clusters);
                w2 = other_than(w1);
                break;
        }
        hq.predicate = Predicate::contains(0, {cluster_word[w1], cluster_word[w2]});
        hq.k = k;
        out.query_cluster_of.push_back(home);
        out.queries.push_back(std::move(hq));
    }
    return out;
}

double
percentile_target(double percentile) {
    if (!(percentile >= 0.0 && percentile <= 100.0)) {
        throw Error(ErrorCode::kInvalidArgument, "percentile must lie in [0, 100]");
    }
    if (percentile >= 100.0) {
        return 1.0;
    }
    static constexpr double kAnchors[] = {1.0, 25.0, 50.0, 75.0, 99.0};
    const auto& t = kDefaultSelectivityTargets;
    if (percentile <= kAnchors[0]) {
        return t[0];
    }
    for (std::size_t i = 1; i < 5; ++i) {
        if (percentile <= kAnchors[i]) {
            double f = (percentile - kAnchors[i - 1]) / (kAnchors[i] - kAnchors[i - 1]);
            return std::exp(std::log(t[i - 1]) + f * (std::log(t[i]) - std::log(t[i - 1])));
        }
    }
    // Between the 99th percentile and 100: interpolate toward 1.0.
    double f = (percentile - 99.0) / 1.0;
    return std::exp(std::log(t[4]) * (1.0 - f));
}

std::vector<std::int64_t>
uniform_dates(std::size_t n, std::mt19937_64& rng) {
    const std::int64_t lo = parse_date("1900-01-01");
    const std::int64_t hi = parse_date("2020-12-31");
    std::vector<std::int64_t> out(n);
    for (auto& d : out) {
        d = lo + static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
    }
    return out;
}

std::map<double, std::vector<HybridQuery>>
gen_selectivity_sweep(const Dataset& ds,
                      std::size_t attr,
                      std::span<const double> targets,
                      std::span<const float> query_vectors,
                      std::size_t n_queries,
                      std::uint64_t seed,
                      std::size_t k) {
    const AttributeSchema& schema = ds.attributes().schema();
    if (attr >= schema.size() || (schema[attr].kind != AttributeKind::kInteger &&
                                  schema[attr].kind != AttributeKind::kDate)) {
        throw Error(ErrorCode::kSchemaMismatch,
                    "selectivity sweeps need an integer or date attribute");
    }
    const std::size_t dim = ds.dim();
    if (query_vectors.empty() || query_vectors.size() % dim != 0) {
        throw Error(ErrorCode::kDimensionMismatch, "query vector pool does not match dimension");
    }
    const std::size_t pool = query_vectors.size() / dim;
    const std::size_t n = ds.size();
    std::vector<std::int64_t> sorted(n);
    for (NodeId i = 0; i < n; ++i) {
        sorted[i] = ds.attributes().integer(attr, i);
    }
    std::sort(sorted.begin(), sorted.end());
    auto count_in = [&](std::int64_t lo, std::int64_t hi) {
        return static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), hi) -
                                        std::lower_bound(sorted.begin(), sorted.end(), lo));
    };

    std::mt19937_64 rng(stream_seed(seed, kQueryStream));
    std::map<double, std::vector<HybridQuery>> out;
    std::size_t next_vector = 0;
    for (double target : targets) {
        if (!(target > 0.0 && target <= 1.0)) {
            throw Error(ErrorCode::kInvalidArgument, "selectivity targets must lie in (0, 1]");
        }
        std::vector<HybridQuery> queries;
        const std::size_t m = static_cast<std::size_t>(std::llround(target * static_cast<double>(n)));
        for (std::size_t q = 0; q < n_queries; ++q) {
            HybridQuery hq;
            const float* v = query_vectors.data() + (next_vector++ % pool) * dim;
            hq.vector.assign(v, v + dim);
            hq.k = k;
            if (target == 1.0) {
                hq.predicate = Predicate::always_true();
                queries.push_back(std::move(hq));
                continue;
            }
            bool placed = false;
            for (int attempt = 0; attempt < 16 && m >= 1 && !placed; ++attempt) {
                std::size_t start = uniform_below(rng, n - m + 1);
                std::int64_t lo = sorted[start];
                std::int64_t hi = sorted[start + m - 1];
                double s = static_cast<double>(count_in(lo, hi)) / static_cast<double>(n);
                if (std::abs(s - target) <= 0.1 * target) {
                    hq.predicate = Predicate::between(attr, lo, hi);
                    placed = true;
                }
            }
            if (!placed) {
                throw Error(ErrorCode::kUnreachableSelectivity,
                            "no window over attribute " + std::to_string(attr) +
                                " reaches selectivity " + std::to_string(target) +
                                " within 10%");
            }
            queries.push_back(std::move(hq));
        }
        out[target] = std::move(queries);
    }
    return out;
}

GroundTruth
ground_truth(const Dataset& ds, std::span<const HybridQuery> queries, std::size_t k) {
    if (k == 0) {
        throw Error(ErrorCode::kInvalidK, "K must be positive");
    }
    for (const HybridQuery& q : queries) {
        if (q.vector.size() != ds.dim()) {
            throw Error(ErrorCode::kDimensionMismatch, "query dimension does not match dataset");
        }
        q.predicate.validate(ds.attributes().schema());
    }
    GroundTruth gt;
    gt.k = k;
    gt.results.resize(queries.size());
    parallel_for(queries.size(), [&](std::size_t qi) {
        const HybridQuery& q = queries[qi];
        std::vector<Neighbor> all;
        for (NodeId i = 0; i < ds.size(); ++i) {
            if (q.predicate.matches(ds.attributes(), i)) {
                all.push_back({i, ds.distance_to(q.vector.data(), i)});
            }
        }
        std::size_t keep = std::min(k, all.size());
        std::partial_sort(all.begin(), all.begin() + keep, all.end());
        all.resize(keep);
        for (Neighbor& nb : all) {
            nb.distance = reported_distance(ds.metric(), nb.distance);
        }
        gt.results[qi] = std::move(all);
    });
    return gt;
}

}  // namespace acorn
