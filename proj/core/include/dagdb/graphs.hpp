// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dagdb Authors

#ifndef DAGDB_GRAPHS_HPP
#define DAGDB_GRAPHS_HPP

#include "dagdb/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dagdb {

/// Join status of an unordered node pair {i, j}, read with i < j.
enum class JoinStatus : std::uint8_t {
    kUnjoined,
    kForward,     // i -> j
    kBackward,    // i <- j
    kUndirected,  // i -- j
};

/// Partially directed graph storing one JoinStatus per unordered pair.
class Pdag {
public:
    Pdag() = default;
    explicit Pdag(int d);

    [[nodiscard]] int d() const noexcept { return d_; }

    /// Status of {a, b} from a's point of view: kForward means a -> b.
    [[nodiscard]] JoinStatus status(int a, int b) const;
    void set_status(int a, int b, JoinStatus s);

    void set_directed(int from, int to) { set_status(from, to, JoinStatus::kForward); }
    void set_undirected(int a, int b) { set_status(a, b, JoinStatus::kUndirected); }

    [[nodiscard]] bool adjacent(int a, int b) const { return status(a, b) != JoinStatus::kUnjoined; }
    [[nodiscard]] bool directed(int from, int to) const { return status(from, to) == JoinStatus::kForward; }
    [[nodiscard]] bool undirected(int a, int b) const { return status(a, b) == JoinStatus::kUndirected; }

    /// Number of joined pairs (directed or undirected).
    [[nodiscard]] int edge_count() const noexcept;
    [[nodiscard]] int directed_count() const noexcept;

    /// Row-major over pairs i < j; used for metric comparisons.
    [[nodiscard]] const std::vector<JoinStatus>& pair_status() const noexcept { return status_; }

    friend bool operator==(const Pdag& a, const Pdag& b) { return a.d_ == b.d_ && a.status_ == b.status_; }

private:
    [[nodiscard]] std::size_t index(int i, int j) const;

    int d_ = 0;
    std::vector<JoinStatus> status_;
};

[[nodiscard]] bool is_acyclic(const BinaryAdjacency& z);

/// Kahn order, smallest available node first; throws NotADag on a cycle.
[[nodiscard]] NodeOrder topological_order(const BinaryAdjacency& z);

/// Erdos-Renyi DAG with dk expected edges: skeleton pairs joined with
/// probability 2k/(d-1), oriented along a uniformly random permutation.
[[nodiscard]] BinaryAdjacency random_er_dag(int d, double k, std::uint64_t seed);

/// Barabasi-Albert DAG with exactly k(d - (k+1)/2) edges, oriented by arrival.
[[nodiscard]] BinaryAdjacency random_sf_dag(int d, int k, std::uint64_t seed);

/// Expected edge count of the ER-k / SF-k families.
[[nodiscard]] double expected_er_edges(int d, double k);
[[nodiscard]] double expected_sf_edges(int d, int k);

/// Completed PDAG (essential graph) of a DAG: v-structures plus Meek closure.
[[nodiscard]] Pdag dag_to_cpdag(const BinaryAdjacency& z);

/// Direct embedding of a DAG as a PDAG with every edge directed.
[[nodiscard]] Pdag dag_as_pdag(const BinaryAdjacency& z);

// Edge-list text format: "# d=<n>" header, then "i\tj" per edge (0-based).
// PDAG lists add a third column, "d" (i -> j) or "u" (i -- j, written i < j).
void write_edge_list(std::ostream& out, const BinaryAdjacency& z);
void write_edge_list(std::ostream& out, const Pdag& p);
[[nodiscard]] BinaryAdjacency read_edge_list(std::istream& in);
[[nodiscard]] Pdag read_pdag_edge_list(std::istream& in);

void save_edge_list(const std::string& path, const BinaryAdjacency& z);
[[nodiscard]] BinaryAdjacency load_edge_list(const std::string& path);

}  // namespace dagdb

#endif  // DAGDB_GRAPHS_HPP
