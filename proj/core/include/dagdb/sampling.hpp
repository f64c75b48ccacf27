// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dagdb Authors

#ifndef DAGDB_SAMPLING_HPP
#define DAGDB_SAMPLING_HPP

#include "dagdb/rng.hpp"
#include "dagdb/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace dagdb {

/// A MAP solver for the implicit distribution: real parameter -> digraph.
using MapSolver = std::function<BinaryAdjacency(const ThetaParam&)>;

/// Entry-wise indicator of Theta > 0 (strict).
[[nodiscard]] BinaryAdjacency map_unconstrained(const ThetaParam& theta);

/// The M largest positive off-diagonal entries. Equal values are ranked by
/// row-major index.
[[nodiscard]] BinaryAdjacency map_top_m(const ThetaParam& theta, int max_edges);

/// map_top_m when `max_edges` is set, map_unconstrained otherwise.
[[nodiscard]] MapSolver make_map_solver(std::optional<int> max_edges);

/// Clamp applied to uniform draws before the logistic inverse CDF.
inline constexpr double kLogisticClamp = 1e-12;

/// Off-diagonal i.i.d. standard-logistic noise, diagonal zero.
[[nodiscard]] NoiseMatrix sample_logistic_noise(int d, Rng& rng);

struct PmSample {
    BinaryAdjacency z;
    NoiseMatrix noise;
};

using SampleBatch = std::vector<PmSample>;

/// Perturb-and-MAP: S draws of MAP(Theta + tau * Psi). Sample s uses the
/// stream derive_seed(seed, {s}), so batches are reproducible per sample.
[[nodiscard]] SampleBatch pm_sample(const ThetaParam& theta, double tau, int samples, const MapSolver& solver,
                                    std::uint64_t seed);

[[nodiscard]] SampleBatch pm_sample(const ThetaParam& theta, double tau, int samples,
                                    std::optional<int> max_edges, std::uint64_t seed);

/// Log-normaliser of the independent-entry family (no size constraint):
/// sum over i != j of log(1 + exp(Theta_ij / tau)).
[[nodiscard]] double log_partition_unconstrained(const ThetaParam& theta, double tau);

/// log p(Z; Theta) = <Z, Theta>_F / tau - A(Theta), unconstrained family.
[[nodiscard]] double log_prob_unconstrained(const BinaryAdjacency& z, const ThetaParam& theta, double tau);

}  // namespace dagdb

#endif  // DAGDB_SAMPLING_HPP
