// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dagdb Authors

#include "cli.hpp"

#include "dagdb/data.hpp"
#include "dagdb/graphs.hpp"
#include "dagdb/metrics.hpp"
#include "dagdb/rng.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace dagdb::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

/// Usage-level failure: bad flags, unreadable input, invalid parameters.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path.string());
    out << text;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw UsageError("cannot create directory " + dir + ": " + ec.message());
}

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json edges_json(const BinaryAdjacency& z) {
    json e = json::array();
    for (const auto& [i, j] : z.edges()) e.push_back(json::array({i, j}));
    return e;
}

json report_json(const MetricReport& r) {
    json j;
    j["shd_c"] = r.shd_c;
    j["nshd_c"] = r.nshd_c;
    j["precision_c"] = r.precision_c;
    j["recall_c"] = r.recall_c;
    j["pred_size"] = r.pred_size;
    return j;
}

void write_manifest(const std::string& out_dir, const std::string& command, const std::vector<std::string>& argv,
                    const json& config, const std::vector<std::string>& inputs, const std::vector<std::uint64_t>& seeds,
                    const std::vector<std::string>& outputs) {
    json m;
    m["tool"] = "dagdb";
    m["version"] = kToolVersion;
    m["command"] = command;
    m["argv"] = argv;
    m["config"] = config;
    m["inputs"] = inputs;
    m["seeds"] = seeds;
    m["outputs"] = outputs;
    write_text(fs::path(out_dir) / "manifest.json", m.dump(2) + "\n");
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

bool first_line_is_header(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::string line;
    while (std::getline(in, line))
        if (line.find_first_not_of(" \t\r") != std::string::npos) break;
    const char delim = line.find(',') != std::string::npos ? ',' : '\t';
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, delim)) {
        const auto b = cell.find_first_not_of(" \t\"\r");
        const auto e = cell.find_last_not_of(" \t\"\r");
        if (b == std::string::npos) continue;
        double v;
        auto [ptr, ec] = std::from_chars(cell.data() + b, cell.data() + e + 1, v);
        if (ec != std::errc() || ptr != cell.data() + e + 1) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// gen

int cmd_gen(const GenOptions& o, const std::vector<std::string>& argv, std::ostream& out) {
    if (o.graph_type != "er" && o.graph_type != "sf") throw UsageError("graph type must be 'er' or 'sf'");
    if (o.d < 2) throw UsageError("--d must be >= 2");
    if (o.n < 1) throw UsageError("--n must be >= 1");
    if (!(o.sigma2 > 0.0)) throw UsageError("--sigma2 must be > 0");
    const GraphSpec spec{o.graph_type, o.k};
    BinaryAdjacency dag;
    try {
        dag = spec.sample(o.d, o.seed);
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
    Rng rng = make_rng(o.seed, {0x4c414e4du});
    const Lanm lanm = make_lanm(dag, o.sigma2, rng);
    const Dataset data = simulate(lanm, o.n, rng);

    ensure_dir(o.out_dir);
    const fs::path dir(o.out_dir);
    save_edge_list((dir / "truth.tsv").string(), dag);
    save_csv((dir / "weights.csv").string(), lanm.weights);
    save_csv((dir / "data.csv").string(), data.x);

    json cfg;
    cfg["graph_type"] = o.graph_type;
    cfg["d"] = o.d;
    cfg["k"] = o.k;
    cfg["sigma2"] = o.sigma2;
    cfg["n"] = o.n;
    cfg["seed"] = o.seed;
    write_manifest(o.out_dir, "gen", argv, cfg, {}, {o.seed}, {"truth.tsv", "weights.csv", "data.csv"});

    out << "generated " << spec.name() << " DAG: d=" << o.d << ", edges=" << dag.edge_count() << ", data " << o.n
        << "x" << o.d << " -> " << o.out_dir << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// train

TrainConfig resolve_train_config(const TrainOptions& o, const CLI::App& sub) {
    if (o.preset.empty() == o.config_path.empty()) throw UsageError("give exactly one of --preset or --config");
    TrainConfig cfg;
    try {
        cfg = o.preset.empty() ? config_from_json(read_text(o.config_path)) : preset(o.preset);
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }

    auto given = [&](const char* name) { return sub.count(name) > 0; };
    auto get_d = [&](const char* name) { return sub.get_option(name)->as<double>(); };
    auto get_i = [&](const char* name) { return sub.get_option(name)->as<int>(); };
    if (given("--epochs")) cfg.epochs = get_i("--epochs");
    if (given("--batch-size")) cfg.batch_size = get_i("--batch-size");
    if (given("--samples")) cfg.S = get_i("--samples");
    if (given("--tau")) cfg.tau = get_d("--tau");
    if (given("--lambda")) {
        if (cfg.estimator.method != EstimatorKind::Method::kImle) throw UsageError("--lambda applies to IMLE only");
        cfg.estimator.lambda = get_d("--lambda");
    }
    if (given("--estimator")) {
        const std::string e = sub.get_option("--estimator")->as<std::string>();
        if (e == "STE")
            cfg.estimator = EstimatorKind::ste();
        else if (e == "IMLE")
            cfg.estimator = EstimatorKind{EstimatorKind::Method::kImle,
                                          given("--lambda") ? get_d("--lambda") : (cfg.estimator.lambda > 0 ? cfg.estimator.lambda : 27.14)};
        else
            throw UsageError("--estimator must be STE or IMLE");
    }
    if (given("--theta-init-width")) cfg.theta_init_width = get_d("--theta-init-width");
    if (given("--lr-theta")) cfg.lr_theta = get_d("--lr-theta");
    if (given("--lr-phi")) cfg.lr_phi = get_d("--lr-phi");
    if (given("--rho-dag")) cfg.rho_dag = get_d("--rho-dag");
    if (given("--rho-sp")) cfg.rho_sp = get_d("--rho-sp");
    if (given("--max-size-scale")) cfg.max_size_scale = get_d("--max-size-scale");
    if (given("--seed")) cfg.seed = sub.get_option("--seed")->as<std::uint64_t>();
    if (given("--train-with-dag")) cfg.train_with_dag = true;
    if (given("--no-shuffle")) cfg.shuffle = false;
    if (given("--ste-mean")) cfg.ste_mean_over_samples = true;

    if (!o.max_size.empty()) {
        if (o.max_size == "none") {
            cfg.M.reset();
        } else if (o.max_size == "auto") {
            if (!o.expected_edges) throw UsageError("--max-size auto needs --expected-edges");
            cfg.M = auto_max_size(*o.expected_edges, cfg.max_size_scale);
        } else {
            int m = 0;
            auto [ptr, ec] = std::from_chars(o.max_size.data(), o.max_size.data() + o.max_size.size(), m);
            if (ec != std::errc() || ptr != o.max_size.data() + o.max_size.size() || m < 0)
                throw UsageError("--max-size must be a non-negative integer, 'none' or 'auto'");
            cfg.M = m;
        }
    }
    try {
        cfg.validate();
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

int cmd_train(const TrainOptions& o, const CLI::App& sub, const std::vector<std::string>& argv, std::ostream& out,
              std::ostream& err) {
    TrainConfig cfg = resolve_train_config(o, sub);
    Dataset data;
    try {
        const bool header = o.header || (!o.no_header && first_line_is_header(o.data_path));
        data = load_csv(o.data_path, header, o.center);
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
    std::optional<BinaryAdjacency> truth;
    if (o.truth_path) {
        try {
            truth = load_edge_list(*o.truth_path);
        } catch (const InvalidArgument& e) {
            throw UsageError(e.what());
        }
        if (truth->d() != data.d()) throw UsageError("truth graph and data have different node counts");
    }
    cfg.n = data.n();
    ensure_dir(o.out_dir);
    const fs::path dir(o.out_dir);

    std::vector<std::string> inputs{o.data_path};
    if (!o.config_path.empty()) inputs.push_back(o.config_path);
    if (truth) inputs.push_back(*o.truth_path);

    TrainResult result;
    try {
        result = train(data.x, cfg);
    } catch (const DivergenceError& e) {
        json diag;
        diag["error"] = "divergence";
        diag["message"] = e.what();
        diag["epoch"] = e.epoch;
        diag["batch"] = e.batch;
        diag["loss"] = {{"mse", fmt_double(e.loss.mse)},
                        {"dag_reg", fmt_double(e.loss.dag_reg)},
                        {"sp_reg", fmt_double(e.loss.sp_reg)},
                        {"total", fmt_double(e.loss.total)}};
        write_text(dir / "divergence.json", diag.dump(2) + "\n");
        err << diag.dump() << "\n";
        return kExitNumeric;
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }

    save_edge_list((dir / "predicted.tsv").string(), result.predicted_dag);
    json res;
    res["config"] = json::parse(config_to_json(cfg));
    res["n"] = data.n();
    res["d"] = data.d();
    res["map_edges"] = edges_json(result.map_digraph);
    res["predicted_edges"] = edges_json(result.predicted_dag);
    res["theta"] = matrix_json(result.theta);
    res["phi"] = matrix_json(result.phi);
    json hist = json::array();
    for (const auto& l : result.history)
        hist.push_back({{"mse", l.mse}, {"dag_reg", l.dag_reg}, {"sp_reg", l.sp_reg}, {"total", l.total}});
    res["history"] = std::move(hist);
    std::vector<std::string> outputs{"predicted.tsv", "result.json"};
    if (truth) {
        const MetricReport r = report(*truth, result.predicted_dag);
        res["metrics"] = report_json(r);
        write_text(dir / "metrics.json", report_json(r).dump(2) + "\n");
        outputs.push_back("metrics.json");
    }
    write_text(dir / "result.json", res.dump(2) + "\n");
    write_manifest(o.out_dir, "train", argv, json::parse(config_to_json(cfg)), inputs, {cfg.seed}, outputs);

    out << "trained " << cfg.estimator.name() << " on " << data.n() << "x" << data.d() << ": predicted "
        << result.predicted_dag.edge_count() << " edges (MAP " << result.map_digraph.edge_count() << ") -> "
        << o.out_dir << "\n";
    if (res.contains("metrics")) out << res["metrics"].dump() << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// eval

int cmd_eval(const std::string& truth_path, const std::string& pred_path, std::ostream& out) {
    BinaryAdjacency truth, pred;
    try {
        truth = load_edge_list(truth_path);
        pred = load_edge_list(pred_path);
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
    if (truth.d() != pred.d()) throw UsageError("truth and prediction have different node counts");
    if (!is_acyclic(truth) || !is_acyclic(pred)) throw UsageError("both graphs must be DAGs");
    out << report_json(report(truth, pred)).dump(2) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// bench

int cmd_bench(const BenchOptions& o, const std::vector<std::string>& argv, std::ostream& out) {
    if (o.n_graphs < 1) throw UsageError("--n-graphs must be >= 1");
    if (o.n < 1) throw UsageError("--n must be >= 1");
    std::vector<GraphSpec> specs;
    for (const auto& t : o.types) {
        try {
            specs.push_back(GraphSpec::parse(t));
        } catch (const InvalidArgument& e) {
            throw UsageError(e.what());
        }
    }
    try {
        (void)preset(o.preset);
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }

    struct Job {
        GraphSpec spec;
        int d;
        int graph;
        std::uint64_t seed;
        std::string method;
        TrainConfig cfg;
    };
    std::vector<Job> jobs;
    for (std::size_t t = 0; t < specs.size(); ++t)
        for (int d : o.d_list)
            for (int g = 0; g < o.n_graphs; ++g) {
                const std::uint64_t seed = derive_seed(o.seed, {static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(d),
                                                                static_cast<std::uint64_t>(g)}) >> 1;
                for (auto& [label, cfg] : bench_methods(o.preset, o.ablate, specs[t].expected_edges(d))) {
                    TrainConfig c = cfg;
                    c.seed = seed;
                    c.n = o.n;
                    if (o.epochs) c.epochs = *o.epochs;
                    jobs.push_back({specs[t], d, g, seed, label, c});
                }
            }

    std::vector<BenchRow> rows(jobs.size());
    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            const Job& job = jobs[i];
            BenchRow& row = rows[i];
            row.graph_type = job.spec.name();
            row.d = job.d;
            row.seed = job.seed;
            row.method = job.method;
            const auto t0 = std::chrono::steady_clock::now();
            try {
                const BinaryAdjacency truth = job.spec.sample(job.d, job.seed);
                Rng rng = make_rng(job.seed, {0x4c414e4du});
                const Lanm lanm = make_lanm(truth, 1.0, rng);
                const Dataset data = simulate(lanm, job.cfg.n, rng);
                const TrainResult res = train(data.x, job.cfg);
                const MetricReport r = report(truth, res.predicted_dag);
                row.shd_c = r.shd_c;
                row.nshd_c = r.nshd_c;
                row.precision_c = r.precision_c;
                row.recall_c = r.recall_c;
                row.pred_size = r.pred_size;
            } catch (const DivergenceError& e) {
                row.status = std::string("diverged: ") + e.what();
            } catch (const std::exception& e) {
                row.status = std::string("error: ") + e.what();
            }
            row.wall_seconds =
                o.no_timing ? 0.0 : std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            std::lock_guard lock(log_mutex);
            out << "[" << (i + 1) << "/" << jobs.size() << "] " << row.graph_type << " d=" << row.d << " "
                << row.method << " nshd_c=" << fmt_double(row.nshd_c) << " " << row.status << "\n";
        }
    };
    const int threads = std::max(1, std::min<int>(worker_count(), static_cast<int>(jobs.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    const fs::path csv_path(o.out_csv);
    if (csv_path.has_parent_path()) ensure_dir(csv_path.parent_path().string());
    std::string csv = bench_csv_header();
    for (const auto& row : rows) csv += bench_csv_line(row);
    write_text(csv_path, csv);

    json cfg;
    cfg["types"] = o.types;
    cfg["d"] = o.d_list;
    cfg["n_graphs"] = o.n_graphs;
    cfg["preset"] = o.preset;
    cfg["ablate"] = o.ablate;
    cfg["n"] = o.n;
    cfg["epochs"] = o.epochs ? json(*o.epochs) : json(nullptr);
    cfg["no_timing"] = o.no_timing;
    std::vector<std::uint64_t> seeds{o.seed};
    const std::string dir = csv_path.has_parent_path() ? csv_path.parent_path().string() : ".";
    write_manifest(dir, "bench", argv, cfg, {}, seeds, {csv_path.filename().string()});
    return kExitOk;
}

// ---------------------------------------------------------------------------

std::vector<std::string> replace_out(std::vector<std::string> argv, const std::string& out) {
    for (std::size_t i = 0; i + 1 < argv.size(); ++i)
        if (argv[i] == "--out") {
            argv[i + 1] = out;
            return argv;
        }
    argv.push_back("--out");
    argv.push_back(out);
    return argv;
}

}  // namespace

GraphSpec GraphSpec::parse(const std::string& text) {
    if (text.size() < 3) throw InvalidArgument("graph type '" + text + "' must look like er2 or sf4");
    GraphSpec s;
    s.family = text.substr(0, 2);
    if (s.family != "er" && s.family != "sf") throw InvalidArgument("graph family must be er or sf: '" + text + "'");
    const std::string num = text.substr(2);
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), s.k);
    if (ec != std::errc() || ptr != num.data() + num.size() || s.k < 1)
        throw InvalidArgument("bad density in graph type '" + text + "'");
    return s;
}

double GraphSpec::expected_edges(int d) const {
    return family == "er" ? expected_er_edges(d, k) : expected_sf_edges(d, k);
}

BinaryAdjacency GraphSpec::sample(int d, std::uint64_t seed) const {
    return family == "er" ? random_er_dag(d, k, seed) : random_sf_dag(d, k, seed);
}

std::vector<std::pair<std::string, TrainConfig>> bench_methods(const std::string& preset_name, bool ablate,
                                                               double expected_edges) {
    const TrainConfig base = preset(preset_name);
    const bool has_limit = base.M.has_value();
    // Size limits are rescaled to the graph family. STE_84's reference is 84
    // edges for 60 expected; IMLE_None's ablation limit is 66 for 60.
    const double limit_scale = has_limit ? base.max_size_scale : 1.1;
    const int limit = auto_max_size(expected_edges, limit_scale);

    std::vector<std::pair<std::string, TrainConfig>> methods;
    if (!ablate) {
        TrainConfig c = base;
        if (has_limit) c.M = limit;
        methods.emplace_back(preset_name, c);
        return methods;
    }
    for (int cell = 0; cell < 8; ++cell) {
        const bool limit_on = (cell & 4) != 0;
        const bool dag_on = (cell & 2) != 0;
        const bool sp_on = (cell & 1) != 0;
        TrainConfig c = base;
        // For presets without a size limit, the "limit present" column is the
        // preset itself and ablating it means imposing the limit.
        if (has_limit)
            c.M = limit_on ? std::optional<int>(limit) : std::nullopt;
        else
            c.M = limit_on ? std::nullopt : std::optional<int>(limit);
        if (!dag_on) c.rho_dag = 0.0;
        if (!sp_on) c.rho_sp = 0.0;
        std::string label = preset_name + "[M" + (limit_on ? "+" : "-") + ",dag" + (dag_on ? "+" : "-") + ",sp" +
                            (sp_on ? "+" : "-") + "]";
        methods.emplace_back(std::move(label), c);
    }
    return methods;
}

std::string bench_csv_header() {
    return "graph_type,d,seed,method,shd_c,nshd_c,precision_c,recall_c,pred_size,wall_seconds,status\n";
}

std::string bench_csv_line(const BenchRow& r) {
    std::string status = r.status;
    std::replace(status.begin(), status.end(), ',', ';');
    std::replace(status.begin(), status.end(), '\n', ' ');
    std::ostringstream line;
    line << r.graph_type << ',' << r.d << ',' << r.seed << ',' << r.method << ',' << r.shd_c << ','
         << fmt_double(r.nshd_c) << ',' << fmt_double(r.precision_c) << ',' << fmt_double(r.recall_c) << ','
         << r.pred_size << ',' << fmt_double(r.wall_seconds) << ',' << status << '\n';
    return line.str();
}

int worker_count() {
    if (const char* env = std::getenv("DAGDB_THREADS")) {
        int n = 0;
        auto [ptr, ec] = std::from_chars(env, env + std::char_traits<char>::length(env), n);
        if (ec == std::errc() && n >= 1) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"dagdb: DAG structure learning by discrete backpropagation", "dagdb"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a random DAG, linear Gaussian weights and data");
    gen_cmd->add_option("graph_type", gen.graph_type, "er or sf")->required();
    gen_cmd->add_option("--d", gen.d, "Node count")->required();
    gen_cmd->add_option("--k", gen.k, "ER expected degree / SF attachments")->capture_default_str();
    gen_cmd->add_option("--sigma2", gen.sigma2, "Noise variance")->capture_default_str();
    gen_cmd->add_option("--n", gen.n, "Data points")->capture_default_str();
    gen_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
    gen_cmd->add_option("--out", gen.out_dir, "Output directory")->capture_default_str();

    TrainOptions tr;
    auto* train_cmd = app.add_subcommand("train", "Learn a DAG from a CSV data file");
    train_cmd->add_option("data", tr.data_path, "CSV data file")->required();
    train_cmd->add_option("--preset", tr.preset, "STE_84, IMLE_None or IMLE_None_Tr");
    train_cmd->add_option("--config", tr.config_path, "TrainConfig JSON file");
    train_cmd->add_option("--epochs", "Override epochs")->type_name("INT");
    train_cmd->add_option("--batch-size", "Override batch size")->type_name("INT");
    train_cmd->add_option("--samples", "Override P&M sample count S")->type_name("INT");
    train_cmd->add_option("--tau", "Override temperature")->type_name("FLOAT");
    train_cmd->add_option("--estimator", "STE or IMLE")->type_name("NAME");
    train_cmd->add_option("--lambda", "Override IMLE Domke step")->type_name("FLOAT");
    train_cmd->add_option("--theta-init-width", "Override Theta init half-width")->type_name("FLOAT");
    train_cmd->add_option("--lr-theta", "Override Theta learning rate")->type_name("FLOAT");
    train_cmd->add_option("--lr-phi", "Override Phi learning rate")->type_name("FLOAT");
    train_cmd->add_option("--rho-dag", "Override acyclicity coefficient")->type_name("FLOAT");
    train_cmd->add_option("--rho-sp", "Override sparsity coefficient")->type_name("FLOAT");
    train_cmd->add_option("--max-size", tr.max_size, "Max edges: integer, 'none' or 'auto'");
    train_cmd->add_option("--max-size-scale", "Edges per expected edge for --max-size auto")->type_name("FLOAT");
    train_cmd->add_option("--expected-edges", tr.expected_edges, "Expected true edge count (for auto)");
    train_cmd->add_option("--seed", "Random seed")->type_name("UINT");
    train_cmd->add_flag("--train-with-dag", "Project samples onto DAGs with GFAS during training");
    train_cmd->add_flag("--no-shuffle", "Keep batch order fixed across epochs");
    train_cmd->add_flag("--ste-mean", "Average (not sum) STE gradients over samples");
    train_cmd->add_option("--truth", tr.truth_path, "Ground-truth edge list; writes metrics.json");
    train_cmd->add_flag("--header", tr.header, "First CSV row is a header");
    train_cmd->add_flag("--no-header", tr.no_header, "First CSV row is data");
    train_cmd->add_flag("--center", tr.center, "Subtract column means");
    train_cmd->add_option("--out", tr.out_dir, "Output directory")->capture_default_str();

    std::string truth_path, pred_path;
    auto* eval_cmd = app.add_subcommand("eval", "CPDAG metrics of a predicted DAG against the truth");
    eval_cmd->add_option("truth", truth_path, "Truth edge list")->required();
    eval_cmd->add_option("pred", pred_path, "Predicted edge list")->required();

    BenchOptions bench;
    std::string types_text = "er2";
    std::string d_text = "10";
    auto* bench_cmd = app.add_subcommand("bench", "Benchmark campaign over random graphs");
    bench_cmd->add_option("--types", types_text, "Comma list, e.g. er2,sf4")->capture_default_str();
    bench_cmd->add_option("--d", d_text, "Comma list of node counts")->capture_default_str();
    bench_cmd->add_option("--n-graphs", bench.n_graphs, "Graphs per (type, d)")->capture_default_str();
    bench_cmd->add_option("--preset", bench.preset, "Preset name")->capture_default_str();
    bench_cmd->add_option("--seed", bench.seed, "Campaign seed")->capture_default_str();
    bench_cmd->add_option("--out", bench.out_csv, "Output CSV")->capture_default_str();
    bench_cmd->add_option("--n", bench.n, "Data points per graph")->capture_default_str();
    bench_cmd->add_option("--epochs", bench.epochs, "Override epochs");
    bench_cmd->add_flag("--ablate", bench.ablate, "Run the 8-cell regularizer ablation grid");
    bench_cmd->add_flag("--no-timing", bench.no_timing, "Write 0 for wall_seconds (byte-reproducible CSV)");

    std::string manifest_path, replay_out;
    auto* replay_cmd = app.add_subcommand("replay", "Re-run a command from its manifest.json");
    replay_cmd->add_option("manifest", manifest_path, "manifest.json")->required();
    replay_cmd->add_option("--out", replay_out, "Redirect outputs to this path");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << sub->help();
        return kExitUsage;
    }

    try {
        if (*gen_cmd) return cmd_gen(gen, args, out);
        if (*train_cmd) return cmd_train(tr, *train_cmd, args, out, err);
        if (*eval_cmd) return cmd_eval(truth_path, pred_path, out);
        if (*bench_cmd) {
            bench.types = split_list(types_text);
            bench.d_list.clear();
            for (const auto& s : split_list(d_text)) {
                int d = 0;
                auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), d);
                if (ec != std::errc() || ptr != s.data() + s.size() || d < 2) throw UsageError("bad --d entry '" + s + "'");
                bench.d_list.push_back(d);
            }
            return cmd_bench(bench, args, out);
        }
        if (*replay_cmd) {
            const json m = json::parse(read_text(manifest_path), nullptr, false);
            if (m.is_discarded() || !m.contains("argv")) throw UsageError("not a dagdb manifest: " + manifest_path);
            auto argv = m["argv"].get<std::vector<std::string>>();
            if (argv.empty() || argv.front() == "replay" || argv.front() == "eval")
                throw UsageError("manifest has no replayable command");
            if (!replay_out.empty()) argv = replace_out(std::move(argv), replay_out);
            return run(argv, out, err);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DivergenceError& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}

}  // namespace dagdb::cli
