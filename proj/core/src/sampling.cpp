// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dagdb Authors

#include "dagdb/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace dagdb {

BinaryAdjacency map_unconstrained(const ThetaParam& theta) {
    if (theta.rows() != theta.cols()) throw InvalidArgument("theta must be square");
    const int d = static_cast<int>(theta.rows());
    BinaryAdjacency z(d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i)
            if (i != j && theta(i, j) > 0.0) z.set(i, j);
    return z;
}

BinaryAdjacency map_top_m(const ThetaParam& theta, int max_edges) {
    if (theta.rows() != theta.cols()) throw InvalidArgument("theta must be square");
    if (max_edges < 0) throw InvalidArgument("max size must be non-negative");
    const int d = static_cast<int>(theta.rows());

    struct Entry {
        double value;
        int index;  // row-major
    };
    std::vector<Entry> positive;
    positive.reserve(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (i != j && theta(i, j) > 0.0) positive.push_back({theta(i, j), i * d + j});

    const auto keep = std::min<std::size_t>(positive.size(), static_cast<std::size_t>(max_edges));
    auto before = [](const Entry& a, const Entry& b) {
        return a.value > b.value || (a.value == b.value && a.index < b.index);
    };
    if (keep < positive.size())
        std::nth_element(positive.begin(), positive.begin() + static_cast<std::ptrdiff_t>(keep), positive.end(), before);

    BinaryAdjacency z(d);
    for (std::size_t k = 0; k < keep; ++k) z.set(positive[k].index / d, positive[k].index % d);
    return z;
}

MapSolver make_map_solver(std::optional<int> max_edges) {
    if (max_edges) {
        const int m = *max_edges;
        return [m](const ThetaParam& theta) { return map_top_m(theta, m); };
    }
    return [](const ThetaParam& theta) { return map_unconstrained(theta); };
}

NoiseMatrix sample_logistic_noise(int d, Rng& rng) {
    NoiseMatrix psi = NoiseMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (i == j) continue;
            const double u = std::clamp(uniform01(rng), kLogisticClamp, 1.0 - kLogisticClamp);
            psi(i, j) = std::log(u / (1.0 - u));
        }
    return psi;
}

SampleBatch pm_sample(const ThetaParam& theta, double tau, int samples, const MapSolver& solver, std::uint64_t seed) {
    if (!(tau > 0.0)) throw InvalidArgument("temperature must be positive");
    if (samples < 1) throw InvalidArgument("sample count must be >= 1");
    const int d = static_cast<int>(theta.rows());
    SampleBatch batch;
    batch.reserve(static_cast<std::size_t>(samples));
    for (int s = 0; s < samples; ++s) {
        Rng rng = make_rng(seed, {static_cast<std::uint64_t>(s)});
        NoiseMatrix psi = sample_logistic_noise(d, rng);
        BinaryAdjacency z = solver(theta + tau * psi);
        batch.push_back({std::move(z), std::move(psi)});
    }
    return batch;
}

SampleBatch pm_sample(const ThetaParam& theta, double tau, int samples, std::optional<int> max_edges,
                      std::uint64_t seed) {
    return pm_sample(theta, tau, samples, make_map_solver(max_edges), seed);
}

namespace {

// log(1 + exp(x)) without overflow.
double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

}  // namespace

double log_partition_unconstrained(const ThetaParam& theta, double tau) {
    if (!(tau > 0.0)) throw InvalidArgument("temperature must be positive");
    const auto d = theta.rows();
    double total = 0.0;
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            if (i != j) total += softplus(theta(i, j) / tau);
    return total;
}

double log_prob_unconstrained(const BinaryAdjacency& z, const ThetaParam& theta, double tau) {
    const double inner = (z.to_real().array() * theta.array()).sum();
    return inner / tau - log_partition_unconstrained(theta, tau);
}

}  // namespace dagdb
