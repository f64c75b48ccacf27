// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dagdb Authors

#ifndef DAGDB_TOOLS_CLI_HPP
#define DAGDB_TOOLS_CLI_HPP

#include "dagdb/pipeline.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dagdb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

inline constexpr const char* kToolVersion = "0.1.0";

/// Graph family name such as "er2" or "sf4".
struct GraphSpec {
    std::string family;  // "er" or "sf"
    int k = 1;

    static GraphSpec parse(const std::string& text);
    [[nodiscard]] std::string name() const { return family + std::to_string(k); }
    [[nodiscard]] double expected_edges(int d) const;
    [[nodiscard]] BinaryAdjacency sample(int d, std::uint64_t seed) const;
};

struct GenOptions {
    std::string graph_type = "er";
    int d = 0;
    int k = 2;
    double sigma2 = 1.0;
    int n = 1000;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
};

struct TrainOptions {
    std::string data_path;
    std::string preset;
    std::string config_path;
    std::string max_size;  // "", "none", "auto" or an integer
    std::optional<double> expected_edges;
    std::optional<std::string> truth_path;
    bool header = false;
    bool no_header = false;
    bool center = false;
    std::string out_dir = ".";
};

struct BenchOptions {
    std::vector<std::string> types{"er2"};
    std::vector<int> d_list{10};
    int n_graphs = 4;
    std::string preset = "STE_84";
    std::uint64_t seed = 0;
    std::string out_csv = "bench.csv";
    bool ablate = false;
    bool no_timing = false;
    int n = 1000;
    std::optional<int> epochs;
};

/// One bench CSV row.
struct BenchRow {
    std::string graph_type;
    int d = 0;
    std::uint64_t seed = 0;
    std::string method;
    int shd_c = 0;
    double nshd_c = 0.0;
    double precision_c = 0.0;
    double recall_c = 0.0;
    int pred_size = 0;
    double wall_seconds = 0.0;
    std::string status = "ok";
};

/// (method label, config) pairs a bench run evaluates for one graph.
[[nodiscard]] std::vector<std::pair<std::string, TrainConfig>> bench_methods(const std::string& preset_name,
                                                                             bool ablate, double expected_edges);

[[nodiscard]] std::string bench_csv_header();
[[nodiscard]] std::string bench_csv_line(const BenchRow& row);

/// Worker count for bench: DAGDB_THREADS when set, else hardware concurrency.
[[nodiscard]] int worker_count();

/// Entry point; returns the process exit code. Output streams are injectable
/// for tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dagdb::cli

#endif  // DAGDB_TOOLS_CLI_HPP
