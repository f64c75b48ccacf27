// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dagdb Authors

#include "dagdb/types.hpp"

#include <string>

namespace dagdb {

BinaryAdjacency BinaryAdjacency::from_edges(int d, const std::vector<std::pair<int, int>>& edges) {
    BinaryAdjacency z(d);
    for (const auto& [i, j] : edges) z.set(i, j);
    return z;
}

BinaryAdjacency BinaryAdjacency::from_real(const Matrix& m) {
    if (m.rows() != m.cols()) throw InvalidArgument("adjacency must be square");
    BinaryAdjacency z(static_cast<int>(m.rows()));
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < m.rows(); ++i)
            if (m(i, j) > 0.5) z.set(i, j);
    return z;
}

void BinaryAdjacency::set(int i, int j, bool on) {
    if (i < 0 || j < 0 || i >= d() || j >= d())
        throw InvalidArgument("edge (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
    if (i == j) throw InvalidArgument("self-loop at node " + std::to_string(i));
    bits_(i, j) = on ? 1 : 0;
}

int BinaryAdjacency::edge_count() const noexcept {
    int n = 0;
    for (Eigen::Index k = 0; k < bits_.size(); ++k) n += bits_.data()[k];
    return n;
}

std::vector<std::pair<int, int>> BinaryAdjacency::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < d(); ++i)
        for (int j = 0; j < d(); ++j)
            if (bits_(i, j)) out.emplace_back(i, j);
    return out;
}

void require_zero_diagonal(const Matrix& m, const char* what) {
    if (m.rows() != m.cols()) throw InvalidArgument(std::string(what) + ": matrix must be square");
    if (!m.allFinite()) throw InvalidArgument(std::string(what) + ": entries must be finite");
    if (m.rows() > 0 && m.diagonal().cwiseAbs().maxCoeff() != 0.0)
        throw InvalidArgument(std::string(what) + ": diagonal must be zero");
}

}  // namespace dagdb
