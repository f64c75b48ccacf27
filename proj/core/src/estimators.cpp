// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dagdb Authors

#include "dagdb/estimators.hpp"

#include <cmath>

namespace dagdb {

EstimatorKind EstimatorKind::imle(double lambda) {
    if (!(lambda > 0.0)) throw InvalidArgument("IMLE lambda must be positive");
    return {Method::kImle, lambda};
}

Matrix ste_grad(const std::vector<Matrix>& sample_grads, double tau, bool mean_over_samples) {
    if (sample_grads.empty()) throw InvalidArgument("no sample gradients");
    if (!(tau > 0.0)) throw InvalidArgument("temperature must be positive");
    Matrix sum = sample_grads.front();
    for (std::size_t s = 1; s < sample_grads.size(); ++s) sum += sample_grads[s];
    double scale = 1.0 / tau;
    if (mean_over_samples) scale /= static_cast<double>(sample_grads.size());
    sum *= scale;
    if (sum.rows() == sum.cols()) mask_diagonal(sum);
    return sum;
}

ThetaParam imle_target_param(const ThetaParam& theta, const Matrix& sample_grad, double lambda) {
    if (!(lambda > 0.0)) throw InvalidArgument("IMLE lambda must be positive");
    if (theta.rows() != sample_grad.rows() || theta.cols() != sample_grad.cols()) throw InvalidArgument("shape mismatch");
    ThetaParam target = theta - lambda * sample_grad;
    mask_diagonal(target);
    return target;
}

Matrix imle_grad(const ThetaParam& theta, const SampleBatch& samples, const std::vector<Matrix>& sample_grads,
                 double lambda, double tau, const MapSolver& solver) {
    if (samples.empty() || samples.size() != sample_grads.size())
        throw InvalidArgument("sample and gradient counts must match and be non-zero");
    if (!(tau > 0.0)) throw InvalidArgument("temperature must be positive");
    const auto d = theta.rows();
    Matrix diff = Matrix::Zero(d, d);
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const ThetaParam target = imle_target_param(theta, sample_grads[s], lambda);
        const BinaryAdjacency z_target = solver(target + tau * samples[s].noise);
        diff += samples[s].z.to_real() - z_target.to_real();
    }
    diff /= lambda * tau * static_cast<double>(samples.size());
    mask_diagonal(diff);
    return diff;
}

AdamState::AdamState(Eigen::Index rows, Eigen::Index cols, double beta1, double beta2, double eps)
    : m_(Matrix::Zero(rows, cols)), v_(Matrix::Zero(rows, cols)), beta1_(beta1), beta2_(beta2), eps_(eps) {}

void AdamState::step(Matrix& param, const Matrix& grad, double lr) {
    if (param.rows() != m_.rows() || param.cols() != m_.cols() || grad.rows() != m_.rows() || grad.cols() != m_.cols())
        throw InvalidArgument("Adam: shape mismatch");
    if (!(lr > 0.0)) throw InvalidArgument("Adam: learning rate must be positive");
    ++t_;
    m_ = beta1_ * m_ + (1.0 - beta1_) * grad;
    v_ = beta2_ * v_ + (1.0 - beta2_) * grad.cwiseAbs2();
    const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
    param.array() -= lr * (m_.array() / c1) / ((v_.array() / c2).sqrt() + eps_);
    if (param.rows() == param.cols()) mask_diagonal(param);
}

}  // namespace dagdb
