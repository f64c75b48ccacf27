// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dagdb Authors

#ifndef DAGDB_MODEL_HPP
#define DAGDB_MODEL_HPP

#include "dagdb/types.hpp"

namespace dagdb {

struct RegCoeffs {
    double rho_dag = 0.0;
    double rho_sp = 0.0;
};

/// Invariant: total == mse + rho_dag * dag_reg + rho_sp * sp_reg.
struct LossBreakdown {
    double mse = 0.0;
    double dag_reg = 0.0;
    double sp_reg = 0.0;
    double total = 0.0;
};

/// (x <> Z)_ij = x_i Z_ij.
[[nodiscard]] Matrix graphify(const Vector& x, const BinaryAdjacency& z);

/// x~_j = sum_i x_i Phi_ij Z_ij: node j sees only its parents.
[[nodiscard]] Vector predict(const Vector& x, const BinaryAdjacency& z, const LinearWeights& phi);

/// Mean over components of the squared error.
[[nodiscard]] double mse(const Vector& x, const Vector& x_pred);

/// exp(A) by scaling and squaring with a Pade approximant.
[[nodiscard]] Matrix matrix_exp(const Matrix& a);

/// (tr exp(A) - d)^2; zero exactly on DAG adjacency matrices.
[[nodiscard]] double dag_reg(const Matrix& a);
[[nodiscard]] double dag_reg(const BinaryAdjacency& z);

/// Sum of entries (edge count for binary input).
[[nodiscard]] double sparsity_reg(const Matrix& a);
[[nodiscard]] double sparsity_reg(const BinaryAdjacency& z);

// Batch operations. Rows of `x_batch` are data points. The adjacency may be
// a real relaxation `a` of a binary Z so that finite differences apply.

[[nodiscard]] LossBreakdown loss_batch(const Matrix& x_batch, const Matrix& a, const LinearWeights& phi, RegCoeffs rho);
[[nodiscard]] LossBreakdown loss_batch(const Matrix& x_batch, const BinaryAdjacency& z, const LinearWeights& phi,
                                       RegCoeffs rho);

/// Gradient of the per-sample loss with respect to the adjacency, diagonal zero.
[[nodiscard]] Matrix grad_z(const Matrix& x_batch, const Matrix& a, const LinearWeights& phi, RegCoeffs rho);
[[nodiscard]] Matrix grad_z(const Matrix& x_batch, const BinaryAdjacency& z, const LinearWeights& phi, RegCoeffs rho);

/// Gradient of the MSE term with respect to Phi, diagonal zero.
[[nodiscard]] Matrix grad_phi(const Matrix& x_batch, const Matrix& a, const LinearWeights& phi);
[[nodiscard]] Matrix grad_phi(const Matrix& x_batch, const BinaryAdjacency& z, const LinearWeights& phi);

/// Loss and both gradients for one sampled Z, sharing intermediate products.
struct SampleEvaluation {
    LossBreakdown loss;
    Matrix grad_z;
    Matrix grad_phi;
};

[[nodiscard]] SampleEvaluation evaluate_sample(const Matrix& x_batch, const BinaryAdjacency& z, const LinearWeights& phi,
                                               RegCoeffs rho);

}  // namespace dagdb

#endif  // DAGDB_MODEL_HPP
