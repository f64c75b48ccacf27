// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dagdb Authors

#ifndef DAGDB_METRICS_HPP
#define DAGDB_METRICS_HPP

#include "dagdb/graphs.hpp"

namespace dagdb {

/// Class (CPDAG-based) metrics of a predicted DAG against the truth.
struct MetricReport {
    int shd_c = 0;
    double nshd_c = 0.0;
    double precision_c = 0.0;
    double recall_c = 0.0;
    int pred_size = 0;
};

// All of these convert both DAGs to CPDAGs first. Each unordered pair is
// unjoined, i -> j, i <- j or i -- j; the three joined kinds are distinct
// edge types for precision and recall.

[[nodiscard]] int shd_cpdag(const BinaryAdjacency& true_dag, const BinaryAdjacency& pred_dag);
[[nodiscard]] double precision_cpdag(const BinaryAdjacency& true_dag, const BinaryAdjacency& pred_dag);
[[nodiscard]] double recall_cpdag(const BinaryAdjacency& true_dag, const BinaryAdjacency& pred_dag);
[[nodiscard]] MetricReport report(const BinaryAdjacency& true_dag, const BinaryAdjacency& pred_dag);

/// Pair-status disagreements between two PDAGs.
[[nodiscard]] int shd_pdag(const Pdag& a, const Pdag& b);

/// Debugging aid: SHD on the raw DAGs, no equivalence-class conversion.
[[nodiscard]] int shd_raw(const BinaryAdjacency& true_dag, const BinaryAdjacency& pred_dag);

}  // namespace dagdb

#endif  // DAGDB_METRICS_HPP
