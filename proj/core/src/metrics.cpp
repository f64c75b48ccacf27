// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dagdb Authors

#include "dagdb/metrics.hpp"

#include <algorithm>

namespace dagdb {

namespace {

void check_same_d(const BinaryAdjacency& a, const BinaryAdjacency& b) {
    if (a.d() != b.d()) throw InvalidArgument("graphs have different node counts");
}

int shared_edges(const Pdag& a, const Pdag& b) {
    int n = 0;
    const auto& sa = a.pair_status();
    const auto& sb = b.pair_status();
    for (std::size_t k = 0; k < sa.size(); ++k)
        if (sa[k] != JoinStatus::kUnjoined && sa[k] == sb[k]) ++n;
    return n;
}

}  // namespace

int shd_pdag(const Pdag& a, const Pdag& b) {
    if (a.d() != b.d()) throw InvalidArgument("graphs have different node counts");
    const auto& sa = a.pair_status();
    const auto& sb = b.pair_status();
    int n = 0;
    for (std::size_t k = 0; k < sa.size(); ++k) n += sa[k] != sb[k];
    return n;
}

int shd_cpdag(const BinaryAdjacency& true_dag, const BinaryAdjacency& pred_dag) {
    check_same_d(true_dag, pred_dag);
    return shd_pdag(dag_to_cpdag(true_dag), dag_to_cpdag(pred_dag));
}

double precision_cpdag(const BinaryAdjacency& true_dag, const BinaryAdjacency& pred_dag) {
    check_same_d(true_dag, pred_dag);
    const Pdag t = dag_to_cpdag(true_dag);
    const Pdag p = dag_to_cpdag(pred_dag);
    return static_cast<double>(shared_edges(t, p)) / std::max(1, p.edge_count());
}

double recall_cpdag(const BinaryAdjacency& true_dag, const BinaryAdjacency& pred_dag) {
    check_same_d(true_dag, pred_dag);
    const Pdag t = dag_to_cpdag(true_dag);
    const Pdag p = dag_to_cpdag(pred_dag);
    return static_cast<double>(shared_edges(t, p)) / std::max(1, t.edge_count());
}

MetricReport report(const BinaryAdjacency& true_dag, const BinaryAdjacency& pred_dag) {
    check_same_d(true_dag, pred_dag);
    const Pdag t = dag_to_cpdag(true_dag);
    const Pdag p = dag_to_cpdag(pred_dag);
    const int shared = shared_edges(t, p);
    MetricReport r;
    r.shd_c = shd_pdag(t, p);
    r.nshd_c = true_dag.d() > 0 ? static_cast<double>(r.shd_c) / true_dag.d() : 0.0;
    r.precision_c = static_cast<double>(shared) / std::max(1, p.edge_count());
    r.recall_c = static_cast<double>(shared) / std::max(1, t.edge_count());
    r.pred_size = pred_dag.edge_count();
    return r;
}

int shd_raw(const BinaryAdjacency& true_dag, const BinaryAdjacency& pred_dag) {
    check_same_d(true_dag, pred_dag);
    return shd_pdag(dag_as_pdag(true_dag), dag_as_pdag(pred_dag));
}

}  // namespace dagdb
