// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dagdb Authors

#ifndef DAGDB_ESTIMATORS_HPP
#define DAGDB_ESTIMATORS_HPP

#include "dagdb/sampling.hpp"
#include "dagdb/types.hpp"

#include <string>
#include <vector>

namespace dagdb {

/// Discrete backpropagation from sampled Z to Theta.
struct EstimatorKind {
    enum class Method { kSte, kImle };

    Method method = Method::kSte;
    double lambda = 0.0;  // Domke step, IMLE only; must be > 0 there.

    static EstimatorKind ste() { return {Method::kSte, 0.0}; }
    static EstimatorKind imle(double lambda);

    [[nodiscard]] std::string name() const { return method == Method::kSte ? "STE" : "IMLE"; }
};

/// tau^-1 * sum_s grads[s]; `mean_over_samples` divides by S as well.
[[nodiscard]] Matrix ste_grad(const std::vector<Matrix>& sample_grads, double tau, bool mean_over_samples = false);

/// Domke target Theta - lambda * grad, diagonal zero.
[[nodiscard]] ThetaParam imle_target_param(const ThetaParam& theta, const Matrix& sample_grad, double lambda);

/// (1 / (lambda tau S)) sum_s [MAP(Theta + tau Psi_s) - MAP(Theta_s + tau Psi_s)]
/// reusing each sample's forward noise. `solver` must be the forward solver.
[[nodiscard]] Matrix imle_grad(const ThetaParam& theta, const SampleBatch& samples, const std::vector<Matrix>& sample_grads,
                               double lambda, double tau, const MapSolver& solver);

/// Bias-corrected Adam over one matrix parameter.
class AdamState {
public:
    AdamState() = default;
    AdamState(Eigen::Index rows, Eigen::Index cols, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);

    /// Updates `param` in place; re-zeroes the diagonal of square parameters.
    void step(Matrix& param, const Matrix& grad, double lr);

    [[nodiscard]] long steps() const noexcept { return t_; }
    [[nodiscard]] const Matrix& first_moment() const noexcept { return m_; }
    [[nodiscard]] const Matrix& second_moment() const noexcept { return v_; }

private:
    Matrix m_;
    Matrix v_;
    long t_ = 0;
    double beta1_ = 0.9;
    double beta2_ = 0.999;
    double eps_ = 1e-8;
};

/// Free-function form of AdamState::step.
inline void adam_step(AdamState& state, Matrix& param, const Matrix& grad, double lr) { state.step(param, grad, lr); }

}  // namespace dagdb

#endif  // DAGDB_ESTIMATORS_HPP
