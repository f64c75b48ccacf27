// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dagdb Authors

#include "dagdb/graphs.hpp"

#include "dagdb/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

namespace dagdb {

namespace {

// Unbiased integer in [0, n) by rejection; avoids implementation-defined distributions.
std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % n);
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

std::vector<int> random_permutation(int d, Rng& rng) {
    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = d - 1; i > 0; --i) std::swap(perm[i], perm[uniform_index(rng, static_cast<std::uint64_t>(i) + 1)]);
    return perm;
}

JoinStatus flip(JoinStatus s) {
    switch (s) {
        case JoinStatus::kForward:
            return JoinStatus::kBackward;
        case JoinStatus::kBackward:
            return JoinStatus::kForward;
        default:
            return s;
    }
}

[[noreturn]] void parse_error(int line, const std::string& msg) {
    throw InvalidArgument("edge list line " + std::to_string(line) + ": " + msg);
}

}  // namespace

// ---------------------------------------------------------------------------
// Pdag

Pdag::Pdag(int d) : d_(d), status_(d > 1 ? static_cast<std::size_t>(d) * (d - 1) / 2 : 0, JoinStatus::kUnjoined) {
    if (d < 0) throw InvalidArgument("node count must be non-negative");
}

std::size_t Pdag::index(int i, int j) const {
    // i < j; pairs enumerated row by row.
    return static_cast<std::size_t>(i) * (2 * d_ - i - 1) / 2 + (j - i - 1);
}

JoinStatus Pdag::status(int a, int b) const {
    if (a == b) return JoinStatus::kUnjoined;
    if (a < b) return status_[index(a, b)];
    return flip(status_[index(b, a)]);
}

void Pdag::set_status(int a, int b, JoinStatus s) {
    if (a < 0 || b < 0 || a >= d_ || b >= d_ || a == b) throw InvalidArgument("invalid PDAG pair");
    if (a < b)
        status_[index(a, b)] = s;
    else
        status_[index(b, a)] = flip(s);
}

int Pdag::edge_count() const noexcept {
    return static_cast<int>(std::count_if(status_.begin(), status_.end(), [](JoinStatus s) { return s != JoinStatus::kUnjoined; }));
}

int Pdag::directed_count() const noexcept {
    return static_cast<int>(std::count_if(status_.begin(), status_.end(), [](JoinStatus s) {
        return s == JoinStatus::kForward || s == JoinStatus::kBackward;
    }));
}

// ---------------------------------------------------------------------------
// Acyclicity

bool is_acyclic(const BinaryAdjacency& z) {
    const int d = z.d();
    std::vector<int> indeg(d, 0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) indeg[j] += z(i, j);
    std::vector<int> stack;
    for (int j = 0; j < d; ++j)
        if (indeg[j] == 0) stack.push_back(j);
    int seen = 0;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        ++seen;
        for (int v = 0; v < d; ++v)
            if (z(u, v) && --indeg[v] == 0) stack.push_back(v);
    }
    return seen == d;
}

NodeOrder topological_order(const BinaryAdjacency& z) {
    const int d = z.d();
    std::vector<int> indeg(d, 0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) indeg[j] += z(i, j);
    std::vector<char> done(d, 0);
    NodeOrder order;
    order.reserve(d);
    for (int step = 0; step < d; ++step) {
        int next = -1;
        for (int v = 0; v < d; ++v)
            if (!done[v] && indeg[v] == 0) {
                next = v;
                break;
            }
        if (next < 0) throw NotADag();
        done[next] = 1;
        order.push_back(next);
        for (int v = 0; v < d; ++v)
            if (z(next, v)) --indeg[v];
    }
    return order;
}

// ---------------------------------------------------------------------------
// Random DAGs

double expected_er_edges(int d, double k) { return d * k; }

double expected_sf_edges(int d, int k) { return k * (d - (k + 1) / 2.0); }

BinaryAdjacency random_er_dag(int d, double k, std::uint64_t seed) {
    if (d < 2) throw InvalidArgument("ER DAG needs d >= 2");
    if (!(k >= 1.0)) throw InvalidArgument("ER density k must be >= 1");
    const double p = 2.0 * k / (d - 1);
    if (p > 1.0) throw InvalidArgument("ER edge probability 2k/(d-1) exceeds 1");

    Rng rng = make_rng(seed, {0x45});
    const std::vector<int> perm = random_permutation(d, rng);
    BinaryAdjacency z(d);
    // Pair (a, b) with a < b in permutation positions; orient perm[a] -> perm[b].
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b)
            if (uniform01(rng) < p) z.set(perm[a], perm[b]);
    return z;
}

BinaryAdjacency random_sf_dag(int d, int k, std::uint64_t seed) {
    if (k < 1) throw InvalidArgument("SF attachment count k must be >= 1");
    if (k >= d) throw InvalidArgument("SF attachment count k must be < d");

    Rng rng = make_rng(seed, {0x53});
    const std::vector<int> arrival = random_permutation(d, rng);
    BinaryAdjacency z(d);
    std::vector<double> degree(d, 0.0);

    // Seed clique over the first k + 1 arrivals.
    for (int a = 0; a <= k; ++a)
        for (int b = a + 1; b <= k; ++b) {
            z.set(arrival[a], arrival[b]);
            degree[a] += 1.0;
            degree[b] += 1.0;
        }

    std::vector<int> candidates;
    std::vector<int> chosen;
    for (int t = k + 1; t < d; ++t) {
        candidates.resize(t);
        std::iota(candidates.begin(), candidates.end(), 0);
        chosen.clear();
        for (int pick = 0; pick < k; ++pick) {
            double total = 0.0;
            for (int c : candidates) total += degree[c];
            double u = uniform01(rng) * total;
            std::size_t idx = 0;
            for (; idx + 1 < candidates.size(); ++idx) {
                u -= degree[candidates[idx]];
                if (u < 0.0) break;
            }
            chosen.push_back(candidates[idx]);
            candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(idx));
        }
        for (int c : chosen) {
            z.set(arrival[c], arrival[t]);
            degree[c] += 1.0;
            degree[t] += 1.0;
        }
    }
    return z;
}

// ---------------------------------------------------------------------------
// CPDAG

Pdag dag_as_pdag(const BinaryAdjacency& z) {
    Pdag p(z.d());
    for (const auto& [i, j] : z.edges()) {
        if (z(j, i)) throw NotADag();
        p.set_directed(i, j);
    }
    return p;
}

Pdag dag_to_cpdag(const BinaryAdjacency& z) {
    if (!is_acyclic(z)) throw NotADag();
    const int d = z.d();
    Pdag g(d);
    for (const auto& [i, j] : z.edges()) g.set_undirected(i, j);

    // Edges into colliders with non-adjacent parents are compelled.
    for (int c = 0; c < d; ++c)
        for (int a = 0; a < d; ++a) {
            if (!z(a, c)) continue;
            for (int b = a + 1; b < d; ++b)
                if (z(b, c) && !g.adjacent(a, b)) {
                    g.set_directed(a, c);
                    g.set_directed(b, c);
                }
        }

    // Meek rules; each is sound, so only the DAG's own direction can be compelled.
    auto compelled = [&](int a, int b) {
        for (int c = 0; c < d; ++c) {
            if (c == a || c == b) continue;
            if (g.directed(c, a) && !g.adjacent(c, b)) return true;  // R1
            if (g.directed(a, c) && g.directed(c, b)) return true;   // R2
        }
        for (int c = 0; c < d; ++c) {
            if (c == a || c == b || !g.undirected(a, c) || !g.directed(c, b)) continue;
            for (int e = c + 1; e < d; ++e)  // R3
                if (e != a && e != b && g.undirected(a, e) && g.directed(e, b) && !g.adjacent(c, e)) return true;
        }
        for (int c = 0; c < d; ++c) {
            if (c == a || c == b || !g.adjacent(a, c) || g.adjacent(c, b)) continue;
            for (int e = 0; e < d; ++e)  // R4
                if (e != a && e != b && e != c && g.directed(c, e) && g.directed(e, b) && g.adjacent(a, e)) return true;
        }
        return false;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [a, b] : z.edges())
            if (g.undirected(a, b) && compelled(a, b)) {
                g.set_directed(a, b);
                changed = true;
            }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Edge-list I/O

void write_edge_list(std::ostream& out, const BinaryAdjacency& z) {
    out << "# d=" << z.d() << '\n';
    for (const auto& [i, j] : z.edges()) out << i << '\t' << j << '\n';
}

void write_edge_list(std::ostream& out, const Pdag& p) {
    out << "# d=" << p.d() << '\n';
    for (int i = 0; i < p.d(); ++i)
        for (int j = 0; j < p.d(); ++j) {
            const JoinStatus s = p.status(i, j);
            if (s == JoinStatus::kForward)
                out << i << '\t' << j << "\td\n";
            else if (s == JoinStatus::kUndirected && i < j)
                out << i << '\t' << j << "\tu\n";
        }
}

namespace {

struct RawEdge {
    int i, j;
    char kind;
};

std::pair<int, std::vector<RawEdge>> read_raw(std::istream& in, bool pdag) {
    std::string line;
    int line_no = 0;
    int d = -1;
    std::vector<RawEdge> edges;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (d < 0) {
                const auto pos = line.find("d=");
                if (pos == std::string::npos) parse_error(line_no, "expected '# d=<n>' header");
                try {
                    std::size_t used = 0;
                    d = std::stoi(line.substr(pos + 2), &used);
                } catch (const std::exception&) {
                    parse_error(line_no, "bad node count");
                }
                if (d < 0) parse_error(line_no, "negative node count");
            }
            continue;
        }
        if (d < 0) parse_error(line_no, "edge before '# d=<n>' header");
        std::istringstream fields(line);
        RawEdge e{-1, -1, 'd'};
        std::string kind;
        if (!(fields >> e.i >> e.j)) parse_error(line_no, "expected 'i<TAB>j'");
        if (fields >> kind) {
            if (!pdag || (kind != "d" && kind != "u")) parse_error(line_no, "unexpected column '" + kind + "'");
            e.kind = kind[0];
        }
        std::string extra;
        if (fields >> extra) parse_error(line_no, "trailing field '" + extra + "'");
        if (e.i < 0 || e.j < 0 || e.i >= d || e.j >= d) parse_error(line_no, "node out of range");
        if (e.i == e.j) parse_error(line_no, "self-loop");
        edges.push_back(e);
    }
    if (d < 0) throw InvalidArgument("edge list: missing '# d=<n>' header");
    return {d, std::move(edges)};
}

}  // namespace

BinaryAdjacency read_edge_list(std::istream& in) {
    auto [d, edges] = read_raw(in, false);
    BinaryAdjacency z(d);
    for (const auto& e : edges) z.set(e.i, e.j);
    return z;
}

Pdag read_pdag_edge_list(std::istream& in) {
    auto [d, edges] = read_raw(in, true);
    Pdag p(d);
    for (const auto& e : edges) {
        if (e.kind == 'u')
            p.set_undirected(e.i, e.j);
        else
            p.set_directed(e.i, e.j);
    }
    return p;
}

void save_edge_list(const std::string& path, const BinaryAdjacency& z) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write " + path);
    write_edge_list(out, z);
}

BinaryAdjacency load_edge_list(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot read " + path);
    return read_edge_list(in);
}

}  // namespace dagdb
