// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dagdb Authors

#ifndef DAGDB_MAXDAG_HPP
#define DAGDB_MAXDAG_HPP

#include "dagdb/types.hpp"

namespace dagdb {

/// Acyclic subgraph kept by a maximum-DAG solver. Every kept edge points
/// forward in `ordering`.
struct MaxDagResult {
    BinaryAdjacency dag;
    double kept_weight = 0.0;
    NodeOrder ordering;
};

/// Largest node count accepted by exact_max_dag.
inline constexpr int kExactMaxDagLimit = 10;

/// Weighted greedy feedback-arc-set ordering (Eades, Lin & Smyth).
///
/// Repeatedly strips sinks onto the front of a tail sequence and sources
/// onto the back of a head sequence; when neither exists, moves the node
/// with the largest (out-weight - in-weight) to the head. Weights are read
/// only on edges of `z`. Ties go to the smallest node index.
[[nodiscard]] MaxDagResult gfas_max_dag(const BinaryAdjacency& z, const WeightedAdjacency& w);

/// Exact maximum-weight acyclic subgraph by enumerating node orderings.
/// Aligned edges are always kept, negative weights included. Ties resolve
/// to the lexicographically smallest ordering. Throws for d > 10.
[[nodiscard]] MaxDagResult exact_max_dag(const BinaryAdjacency& z, const WeightedAdjacency& w);

/// Forward edges of `z` under `ordering`, with their total weight.
[[nodiscard]] MaxDagResult align_to_ordering(const BinaryAdjacency& z, const WeightedAdjacency& w, NodeOrder ordering);

}  // namespace dagdb

#endif  // DAGDB_MAXDAG_HPP
