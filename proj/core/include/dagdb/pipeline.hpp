// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dagdb Authors

#ifndef DAGDB_PIPELINE_HPP
#define DAGDB_PIPELINE_HPP

#include "dagdb/estimators.hpp"
#include "dagdb/model.hpp"
#include "dagdb/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dagdb {

/// Everything a training run depends on. Serialised as flat JSON with these
/// field names (estimator as "STE"/"IMLE", its Domke step as "lambda",
/// the sample count as "S" and the max size as "M", null when unset).
struct TrainConfig {
    int n = 1000;
    int epochs = 1000;
    bool shuffle = true;
    int batch_size = 16;
    EstimatorKind estimator = EstimatorKind::ste();
    int S = 10;
    double tau = 1.0;
    double theta_init_width = 0.1;  // Theta ~ U(-w, w)
    double lr_theta = 1e-3;
    double lr_phi = 1e-2;
    double rho_dag = 0.0;
    double rho_sp = 0.0;
    std::optional<int> M;
    bool train_with_dag = false;
    std::uint64_t seed = 0;
    bool ste_mean_over_samples = false;
    // The Domke target steps along the gradient of the sample-mean loss
    // (per-sample gradient / S); false uses the per-sample gradient as is.
    bool imle_target_on_mean_loss = true;
    double max_size_scale = 1.4;  // M per expected edge for auto sizing

    [[nodiscard]] RegCoeffs reg() const { return {rho_dag, rho_sp}; }

    /// Throws InvalidArgument on out-of-range fields.
    void validate() const;
};

/// Tuned settings shipped with the library: "STE_84" and "IMLE_None", plus
/// "IMLE_None_Tr" (IMLE_None trained on GFAS-projected DAGs).
[[nodiscard]] TrainConfig preset(std::string_view name);
[[nodiscard]] std::vector<std::string> preset_names();

/// Max size proportional to the expected edge count: round(scale * expected).
[[nodiscard]] int auto_max_size(double expected_edges, double scale);

[[nodiscard]] std::string config_to_json(const TrainConfig& cfg);
[[nodiscard]] TrainConfig config_from_json(const std::string& text);

struct TrainResult {
    ThetaParam theta;
    LinearWeights phi;
    std::vector<LossBreakdown> history;  // per-epoch means over batches and samples
    BinaryAdjacency map_digraph;         // MAP(theta) before the max-DAG step
    BinaryAdjacency predicted_dag;
};

/// Raised when a loss becomes non-finite during training.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(int epoch, int batch, const LossBreakdown& loss);
    int epoch;
    int batch;
    LossBreakdown loss;
};

/// Partition of [0, n) into ceil(n / batch_size) batches; shuffled per epoch
/// from (seed, epoch) when requested.
[[nodiscard]] std::vector<std::vector<int>> batch_iterator(int n, int batch_size, bool shuffle, std::uint64_t seed,
                                                           int epoch);

/// MAP(theta) under the configured size limit, reduced to a DAG by GFAS.
[[nodiscard]] BinaryAdjacency predict_dag(const ThetaParam& theta, const TrainConfig& cfg);

using EpochCallback = std::function<void(int epoch, const LossBreakdown& mean_loss)>;

/// Learns Theta and Phi from the rows of `x` and predicts a DAG.
[[nodiscard]] TrainResult train(const Matrix& x, const TrainConfig& cfg, const EpochCallback& on_epoch = {});

}  // namespace dagdb

#endif  // DAGDB_PIPELINE_HPP
