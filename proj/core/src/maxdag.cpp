// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dagdb Authors

#include "dagdb/maxdag.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

namespace dagdb {

namespace {

void check_inputs(const BinaryAdjacency& z, const WeightedAdjacency& w) {
    if (w.rows() != z.d() || w.cols() != z.d()) throw InvalidArgument("weight matrix shape does not match graph");
    for (const auto& [i, j] : z.edges())
        if (!std::isfinite(w(i, j))) throw InvalidArgument("non-finite weight on edge");
}

}  // namespace

MaxDagResult align_to_ordering(const BinaryAdjacency& z, const WeightedAdjacency& w, NodeOrder ordering) {
    const int d = z.d();
    std::vector<int> pos(d, -1);
    for (int p = 0; p < static_cast<int>(ordering.size()); ++p) pos[ordering[p]] = p;
    MaxDagResult result{BinaryAdjacency(d), 0.0, std::move(ordering)};
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (z(i, j) && pos[i] < pos[j]) {
                result.dag.set(i, j);
                result.kept_weight += w(i, j);
            }
    return result;
}

MaxDagResult gfas_max_dag(const BinaryAdjacency& z, const WeightedAdjacency& w) {
    check_inputs(z, w);
    const int d = z.d();

    std::vector<char> alive(d, 1);
    std::vector<int> out_count(d, 0), in_count(d, 0);
    std::vector<double> out_weight(d, 0.0), in_weight(d, 0.0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (z(i, j)) {
                ++out_count[i];
                ++in_count[j];
                out_weight[i] += w(i, j);
                in_weight[j] += w(i, j);
            }

    auto remove = [&](int u) {
        alive[u] = 0;
        for (int v = 0; v < d; ++v) {
            if (!alive[v]) continue;
            if (z(u, v)) {
                --in_count[v];
                in_weight[v] -= w(u, v);
            }
            if (z(v, u)) {
                --out_count[v];
                out_weight[v] -= w(v, u);
            }
        }
    };

    NodeOrder head;
    std::deque<int> tail;
    int remaining = d;
    while (remaining > 0) {
        bool stripped = true;
        while (stripped) {
            stripped = false;
            for (int u = 0; u < d; ++u)
                if (alive[u] && out_count[u] == 0) {
                    tail.push_front(u);
                    remove(u);
                    --remaining;
                    stripped = true;
                }
            for (int u = 0; u < d; ++u)
                if (alive[u] && in_count[u] == 0) {
                    head.push_back(u);
                    remove(u);
                    --remaining;
                    stripped = true;
                }
        }
        if (remaining == 0) break;

        int best = -1;
        double best_delta = -std::numeric_limits<double>::infinity();
        for (int u = 0; u < d; ++u) {
            if (!alive[u]) continue;
            const double delta = out_weight[u] - in_weight[u];
            if (delta > best_delta) {
                best_delta = delta;
                best = u;
            }
        }
        head.push_back(best);
        remove(best);
        --remaining;
    }

    head.insert(head.end(), tail.begin(), tail.end());
    return align_to_ordering(z, w, std::move(head));
}

MaxDagResult exact_max_dag(const BinaryAdjacency& z, const WeightedAdjacency& w) {
    check_inputs(z, w);
    const int d = z.d();
    if (d > kExactMaxDagLimit) throw InvalidArgument("instance too large for exact solver");

    NodeOrder perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    NodeOrder best = perm;
    double best_weight = -std::numeric_limits<double>::infinity();
    std::vector<int> pos(d);
    const auto edges = z.edges();
    do {
        for (int p = 0; p < d; ++p) pos[perm[p]] = p;
        double total = 0.0;
        for (const auto& [i, j] : edges)
            if (pos[i] < pos[j]) total += w(i, j);
        if (total > best_weight) {
            best_weight = total;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return align_to_ordering(z, w, std::move(best));
}

}  // namespace dagdb
