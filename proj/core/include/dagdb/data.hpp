// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dagdb Authors

#ifndef DAGDB_DATA_HPP
#define DAGDB_DATA_HPP

#include "dagdb/rng.hpp"
#include "dagdb/types.hpp"

#include <string>
#include <vector>

namespace dagdb {

/// Gaussian equal-variance linear additive noise model on a DAG.
struct Lanm {
    BinaryAdjacency dag;
    LinearWeights weights;  // nonzero only on dag edges, |w| in [0.5, 2]
    double sigma2 = 1.0;
};

struct Dataset {
    Matrix x;  // n x d, one data point per row
    std::vector<std::string> columns;

    [[nodiscard]] int n() const noexcept { return static_cast<int>(x.rows()); }
    [[nodiscard]] int d() const noexcept { return static_cast<int>(x.cols()); }
};

/// Standard normal draw (Box-Muller over uniform01).
[[nodiscard]] double standard_normal(Rng& rng);

/// Edge weights uniform on [-2, -0.5] U [0.5, 2]. Throws NotADag on cycles.
[[nodiscard]] Lanm make_lanm(const BinaryAdjacency& dag, double sigma2, Rng& rng);

/// n rows by ancestral sampling u_j = sum_i w_ij u_i + N(0, sigma2).
[[nodiscard]] Dataset simulate(const Lanm& lanm, int n, Rng& rng);

/// Numeric CSV, comma or tab separated, optional header row. With `center`
/// each column has its mean subtracted. Errors name the row and column.
[[nodiscard]] Dataset load_csv(const std::string& path, bool has_header, bool center);

/// Shortest round-trip formatting, so load_csv reads back identical values.
void save_csv(const std::string& path, const Matrix& x, const std::vector<std::string>& header = {});

/// Subtracts each column's mean in place.
void center_columns(Matrix& x);

}  // namespace dagdb

#endif  // DAGDB_DATA_HPP
