// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dagdb Authors

#include "dagdb/model.hpp"

#include "dagdb/graphs.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace dagdb {

namespace {

void check_batch(const Matrix& x_batch, Eigen::Index d, const LinearWeights& phi) {
    if (x_batch.rows() == 0) throw InvalidArgument("empty batch");
    if (x_batch.cols() != d) throw InvalidArgument("data dimension does not match graph");
    if (phi.rows() != d || phi.cols() != d) throw InvalidArgument("weight matrix shape does not match graph");
}

// Residuals x - x~ for every row, and X^T R / n, the shared factor of both gradients.
struct Residuals {
    Matrix r;
    Matrix xtr;
};

Residuals residuals(const Matrix& x_batch, const Matrix& a, const LinearWeights& phi) {
    const Matrix effective = phi.cwiseProduct(a);
    Residuals out;
    out.r = x_batch - x_batch * effective;
    out.xtr.noalias() = x_batch.transpose() * out.r;
    out.xtr /= static_cast<double>(x_batch.rows());
    return out;
}

double mean_sq(const Matrix& r) { return r.squaredNorm() / static_cast<double>(r.size()); }

}  // namespace

Matrix graphify(const Vector& x, const BinaryAdjacency& z) {
    if (x.size() != z.d()) throw InvalidArgument("data point length does not match graph");
    return x.asDiagonal() * z.to_real();
}

Vector predict(const Vector& x, const BinaryAdjacency& z, const LinearWeights& phi) {
    if (phi.rows() != z.d() || phi.cols() != z.d()) throw InvalidArgument("weight matrix shape does not match graph");
    const Matrix m = graphify(x, z);
    return phi.cwiseProduct(m).colwise().sum().transpose();
}

double mse(const Vector& x, const Vector& x_pred) {
    if (x.size() != x_pred.size()) throw InvalidArgument("length mismatch");
    if (x.size() == 0) return 0.0;
    return (x - x_pred).squaredNorm() / static_cast<double>(x.size());
}

Matrix matrix_exp(const Matrix& a) {
    if (a.rows() != a.cols()) throw InvalidArgument("matrix exponential needs a square matrix");
    return a.exp();
}

double dag_reg(const Matrix& a) {
    const double excess = matrix_exp(a).trace() - static_cast<double>(a.rows());
    return excess * excess;
}

double dag_reg(const BinaryAdjacency& z) { return dag_reg(z.to_real()); }

double sparsity_reg(const Matrix& a) { return a.sum(); }

double sparsity_reg(const BinaryAdjacency& z) { return z.edge_count(); }

LossBreakdown loss_batch(const Matrix& x_batch, const Matrix& a, const LinearWeights& phi, RegCoeffs rho) {
    check_batch(x_batch, a.rows(), phi);
    LossBreakdown loss;
    loss.mse = mean_sq(x_batch - x_batch * phi.cwiseProduct(a));
    loss.dag_reg = dag_reg(a);
    loss.sp_reg = sparsity_reg(a);
    loss.total = loss.mse + rho.rho_dag * loss.dag_reg + rho.rho_sp * loss.sp_reg;
    return loss;
}

LossBreakdown loss_batch(const Matrix& x_batch, const BinaryAdjacency& z, const LinearWeights& phi, RegCoeffs rho) {
    return loss_batch(x_batch, z.to_real(), phi, rho);
}

Matrix grad_z(const Matrix& x_batch, const Matrix& a, const LinearWeights& phi, RegCoeffs rho) {
    check_batch(x_batch, a.rows(), phi);
    const double d = static_cast<double>(a.rows());
    const Residuals res = residuals(x_batch, a, phi);
    Matrix g = (-2.0 / d) * res.xtr.cwiseProduct(phi);
    if (rho.rho_dag != 0.0) {
        const Matrix e = matrix_exp(a);
        g += rho.rho_dag * 2.0 * (e.trace() - d) * e.transpose();
    }
    g.array() += rho.rho_sp;
    mask_diagonal(g);
    return g;
}

Matrix grad_z(const Matrix& x_batch, const BinaryAdjacency& z, const LinearWeights& phi, RegCoeffs rho) {
    return grad_z(x_batch, z.to_real(), phi, rho);
}

Matrix grad_phi(const Matrix& x_batch, const Matrix& a, const LinearWeights& phi) {
    check_batch(x_batch, a.rows(), phi);
    const double d = static_cast<double>(a.rows());
    const Residuals res = residuals(x_batch, a, phi);
    Matrix g = (-2.0 / d) * res.xtr.cwiseProduct(a);
    mask_diagonal(g);
    return g;
}

Matrix grad_phi(const Matrix& x_batch, const BinaryAdjacency& z, const LinearWeights& phi) {
    return grad_phi(x_batch, z.to_real(), phi);
}

SampleEvaluation evaluate_sample(const Matrix& x_batch, const BinaryAdjacency& z, const LinearWeights& phi,
                                 RegCoeffs rho) {
    const Matrix a = z.to_real();
    check_batch(x_batch, a.rows(), phi);
    const double d = static_cast<double>(a.rows());
    const Residuals res = residuals(x_batch, a, phi);

    SampleEvaluation out;
    out.loss.mse = mean_sq(res.r);
    out.loss.sp_reg = z.edge_count();
    out.grad_z = (-2.0 / d) * res.xtr.cwiseProduct(phi);
    out.grad_phi = (-2.0 / d) * res.xtr.cwiseProduct(a);

    // tr exp(Z) == d exactly when Z is acyclic, so the matrix exponential is
    // only needed for cyclic samples.
    if (!is_acyclic(z)) {
        const Matrix e = matrix_exp(a);
        const double excess = e.trace() - d;
        out.loss.dag_reg = excess * excess;
        if (rho.rho_dag != 0.0) out.grad_z += rho.rho_dag * 2.0 * excess * e.transpose();
    }
    out.grad_z.array() += rho.rho_sp;
    mask_diagonal(out.grad_z);
    mask_diagonal(out.grad_phi);
    out.loss.total = out.loss.mse + rho.rho_dag * out.loss.dag_reg + rho.rho_sp * out.loss.sp_reg;
    return out;
}

}  // namespace dagdb
