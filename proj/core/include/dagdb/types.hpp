// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dagdb Authors

#ifndef DAGDB_TYPES_HPP
#define DAGDB_TYPES_HPP

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dagdb {

/// Raised when an argument violates an operation's precondition.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a graph that must be acyclic has a directed cycle.
class NotADag : public std::runtime_error {
public:
    NotADag() : std::runtime_error("not a DAG") {}
};

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// d x d real matrices with a structurally zero diagonal. The aliases carry
/// the role a matrix plays; `require_zero_diagonal` checks the invariant.
using WeightedAdjacency = Matrix;
using ThetaParam = Matrix;
using LinearWeights = Matrix;
using NoiseMatrix = Matrix;

using NodeOrder = std::vector<int>;

/// Zero-diagonal binary adjacency matrix; entry (i, j) set iff edge i -> j.
class BinaryAdjacency {
public:
    using Storage = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

    BinaryAdjacency() = default;
    explicit BinaryAdjacency(int d) : bits_(Storage::Zero(d, d)) {
        if (d < 0) throw InvalidArgument("node count must be non-negative");
    }

    /// Builds from an edge list; throws on self-loops or out-of-range nodes.
    static BinaryAdjacency from_edges(int d, const std::vector<std::pair<int, int>>& edges);

    /// Entries > 0.5 become edges. Diagonal must be zero.
    static BinaryAdjacency from_real(const Matrix& m);

    [[nodiscard]] int d() const noexcept { return static_cast<int>(bits_.rows()); }
    [[nodiscard]] bool operator()(int i, int j) const noexcept { return bits_(i, j) != 0; }
    [[nodiscard]] bool has_edge(int i, int j) const noexcept { return bits_(i, j) != 0; }

    void set(int i, int j, bool on = true);
    void clear(int i, int j) { set(i, j, false); }

    [[nodiscard]] int edge_count() const noexcept;
    [[nodiscard]] std::vector<std::pair<int, int>> edges() const;
    [[nodiscard]] Matrix to_real() const { return bits_.cast<double>(); }
    [[nodiscard]] const Storage& bits() const noexcept { return bits_; }

    friend bool operator==(const BinaryAdjacency& a, const BinaryAdjacency& b) {
        return a.bits_.rows() == b.bits_.rows() && a.bits_ == b.bits_;
    }

private:
    Storage bits_;
};

/// Throws InvalidArgument unless `m` is square, finite, and zero on the diagonal.
void require_zero_diagonal(const Matrix& m, const char* what);

/// Zeroes the diagonal in place.
inline void mask_diagonal(Matrix& m) { m.diagonal().setZero(); }

}  // namespace dagdb

#endif  // DAGDB_TYPES_HPP
