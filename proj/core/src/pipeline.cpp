// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dagdb Authors

#include "dagdb/pipeline.hpp"

#include "dagdb/graphs.hpp"
#include "dagdb/maxdag.hpp"
#include "dagdb/rng.hpp"
#include "dagdb/sampling.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>

namespace dagdb {

void TrainConfig::validate() const {
    auto fail = [](const std::string& msg) { throw InvalidArgument("invalid config: " + msg); };
    if (epochs < 1) fail("epochs must be >= 1");
    if (batch_size < 1) fail("batch_size must be >= 1");
    if (S < 1) fail("S must be >= 1");
    if (!(tau > 0.0)) fail("tau must be > 0");
    if (!(theta_init_width >= 0.0)) fail("theta_init_width must be >= 0");
    if (!(lr_theta > 0.0) || !(lr_phi > 0.0)) fail("learning rates must be > 0");
    if (!(rho_dag >= 0.0) || !(rho_sp >= 0.0)) fail("regularizer coefficients must be >= 0");
    if (M && *M < 0) fail("M must be >= 0");
    if (estimator.method == EstimatorKind::Method::kImle && !(estimator.lambda > 0.0)) fail("lambda must be > 0");
    if (!(max_size_scale > 0.0)) fail("max_size_scale must be > 0");
}

TrainConfig preset(std::string_view name) {
    TrainConfig cfg;
    cfg.n = 1000;
    cfg.epochs = 1000;
    cfg.shuffle = true;
    if (name == "STE_84") {
        cfg.batch_size = 16;
        cfg.estimator = EstimatorKind::ste();
        cfg.S = 10;
        cfg.tau = 1.771e-1;
        cfg.theta_init_width = 2.169e-1;
        cfg.lr_theta = 1.134e-4;
        cfg.lr_phi = 1.232e-2;
        cfg.rho_dag = 4.101e-1;
        cfg.rho_sp = 1.023e-2;
        cfg.M = 84;
        return cfg;
    }
    if (name == "IMLE_None" || name == "IMLE_None_Tr") {
        cfg.batch_size = 8;
        cfg.estimator = EstimatorKind::imle(2.714e1);
        cfg.S = 47;
        cfg.tau = 8.786e-1;
        cfg.theta_init_width = 1.137e-4;
        cfg.lr_theta = 1.616e-3;
        cfg.lr_phi = 3.720e-1;
        cfg.rho_dag = 1.575e-1;
        cfg.rho_sp = 1.208e-3;
        cfg.M.reset();
        cfg.train_with_dag = name == "IMLE_None_Tr";
        return cfg;
    }
    throw InvalidArgument("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() { return {"STE_84", "IMLE_None", "IMLE_None_Tr"}; }

int auto_max_size(double expected_edges, double scale) {
    if (!(expected_edges >= 0.0) || !(scale > 0.0)) throw InvalidArgument("auto max size needs expected edges >= 0 and scale > 0");
    return static_cast<int>(std::lround(scale * expected_edges));
}

std::string config_to_json(const TrainConfig& cfg) {
    nlohmann::ordered_json j;
    j["n"] = cfg.n;
    j["epochs"] = cfg.epochs;
    j["shuffle"] = cfg.shuffle;
    j["batch_size"] = cfg.batch_size;
    j["estimator"] = cfg.estimator.name();
    j["lambda"] = cfg.estimator.method == EstimatorKind::Method::kImle ? nlohmann::ordered_json(cfg.estimator.lambda)
                                                                        : nlohmann::ordered_json(nullptr);
    j["S"] = cfg.S;
    j["tau"] = cfg.tau;
    j["theta_init_width"] = cfg.theta_init_width;
    j["lr_theta"] = cfg.lr_theta;
    j["lr_phi"] = cfg.lr_phi;
    j["rho_dag"] = cfg.rho_dag;
    j["rho_sp"] = cfg.rho_sp;
    j["M"] = cfg.M ? nlohmann::ordered_json(*cfg.M) : nlohmann::ordered_json(nullptr);
    j["train_with_dag"] = cfg.train_with_dag;
    j["seed"] = cfg.seed;
    j["ste_mean_over_samples"] = cfg.ste_mean_over_samples;
    j["imle_target_on_mean_loss"] = cfg.imle_target_on_mean_loss;
    j["max_size_scale"] = cfg.max_size_scale;
    return j.dump(2);
}

TrainConfig config_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidArgument(std::string("config JSON: ") + e.what());
    }
    if (!j.is_object()) throw InvalidArgument("config JSON must be an object");

    static const char* known[] = {"n",       "epochs",  "shuffle", "batch_size",     "estimator",
                                  "lambda",  "S",       "tau",     "theta_init_width", "lr_theta",
                                  "lr_phi",  "rho_dag", "rho_sp",  "M",              "train_with_dag",
                                  "seed",    "ste_mean_over_samples", "imle_target_on_mean_loss", "max_size_scale"};
    for (const auto& [key, value] : j.items())
        if (std::find(std::begin(known), std::end(known), key) == std::end(known))
            throw InvalidArgument("config JSON: unknown field '" + key + "'");

    TrainConfig cfg;
    try {
        cfg.n = j.value("n", cfg.n);
        cfg.epochs = j.value("epochs", cfg.epochs);
        cfg.shuffle = j.value("shuffle", cfg.shuffle);
        cfg.batch_size = j.value("batch_size", cfg.batch_size);
        const std::string est = j.value("estimator", std::string("STE"));
        if (est == "STE") {
            cfg.estimator = EstimatorKind::ste();
        } else if (est == "IMLE") {
            if (!j.contains("lambda") || j["lambda"].is_null()) throw InvalidArgument("config JSON: IMLE needs lambda");
            cfg.estimator = EstimatorKind::imle(j["lambda"].get<double>());
        } else {
            throw InvalidArgument("config JSON: estimator must be STE or IMLE");
        }
        cfg.S = j.value("S", cfg.S);
        cfg.tau = j.value("tau", cfg.tau);
        cfg.theta_init_width = j.value("theta_init_width", cfg.theta_init_width);
        cfg.lr_theta = j.value("lr_theta", cfg.lr_theta);
        cfg.lr_phi = j.value("lr_phi", cfg.lr_phi);
        cfg.rho_dag = j.value("rho_dag", cfg.rho_dag);
        cfg.rho_sp = j.value("rho_sp", cfg.rho_sp);
        if (j.contains("M") && !j["M"].is_null()) cfg.M = j["M"].get<int>();
        cfg.train_with_dag = j.value("train_with_dag", cfg.train_with_dag);
        cfg.seed = j.value("seed", cfg.seed);
        cfg.ste_mean_over_samples = j.value("ste_mean_over_samples", cfg.ste_mean_over_samples);
        cfg.imle_target_on_mean_loss = j.value("imle_target_on_mean_loss", cfg.imle_target_on_mean_loss);
        cfg.max_size_scale = j.value("max_size_scale", cfg.max_size_scale);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("config JSON: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

namespace {

std::string describe(int epoch, int batch, const LossBreakdown& loss) {
    std::ostringstream msg;
    msg << "non-finite loss at epoch " << epoch << ", batch " << batch << " (mse=" << loss.mse
        << ", dag_reg=" << loss.dag_reg << ", sp_reg=" << loss.sp_reg << ", total=" << loss.total << ")";
    return msg.str();
}

bool finite(const LossBreakdown& l) {
    return std::isfinite(l.mse) && std::isfinite(l.dag_reg) && std::isfinite(l.sp_reg) && std::isfinite(l.total);
}

// Forward solver for training. With train_with_dag, the MAP digraph is
// projected onto a DAG by GFAS weighted by the solver's own input.
MapSolver training_solver(const TrainConfig& cfg) {
    MapSolver base = make_map_solver(cfg.M);
    if (!cfg.train_with_dag) return base;
    return [base](const ThetaParam& param) { return gfas_max_dag(base(param), param).dag; };
}

}  // namespace

DivergenceError::DivergenceError(int epoch_, int batch_, const LossBreakdown& loss_)
    : std::runtime_error(describe(epoch_, batch_, loss_)), epoch(epoch_), batch(batch_), loss(loss_) {}

std::vector<std::vector<int>> batch_iterator(int n, int batch_size, bool shuffle, std::uint64_t seed, int epoch) {
    if (n < 1) throw InvalidArgument("need at least one data point");
    if (batch_size < 1) throw InvalidArgument("batch size must be >= 1");
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    if (shuffle) {
        Rng rng = make_rng(seed, {0x5348u, static_cast<std::uint64_t>(epoch)});
        for (int i = n - 1; i > 0; --i) {
            const auto bound = static_cast<std::uint64_t>(i) + 1;
            const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
            std::uint64_t r;
            do {
                r = rng();
            } while (r >= limit);
            std::swap(order[i], order[static_cast<int>(r % bound)]);
        }
    }
    std::vector<std::vector<int>> batches;
    for (int start = 0; start < n; start += batch_size)
        batches.emplace_back(order.begin() + start, order.begin() + std::min(n, start + batch_size));
    return batches;
}

BinaryAdjacency predict_dag(const ThetaParam& theta, const TrainConfig& cfg) {
    const BinaryAdjacency z = make_map_solver(cfg.M)(theta);
    return gfas_max_dag(z, theta).dag;
}

TrainResult train(const Matrix& x, const TrainConfig& cfg, const EpochCallback& on_epoch) {
    cfg.validate();
    const int n = static_cast<int>(x.rows());
    const int d = static_cast<int>(x.cols());
    if (n < cfg.batch_size) throw InvalidArgument("fewer data points than the batch size");
    if (d < 2) throw InvalidArgument("need at least two variables");
    if (!x.allFinite()) throw InvalidArgument("data contains non-finite values");

    Rng init_rng = make_rng(cfg.seed, {0x1417u});
    TrainResult result;
    result.theta = ThetaParam::Zero(d, d);
    result.phi = LinearWeights::Zero(d, d);
    const double phi_bound = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) {
            if (i == j) continue;
            result.theta(i, j) = cfg.theta_init_width * (2.0 * uniform01(init_rng) - 1.0);
        }
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) {
            if (i == j) continue;
            result.phi(i, j) = phi_bound * (2.0 * uniform01(init_rng) - 1.0);
        }

    ThetaParam& theta = result.theta;
    LinearWeights& phi = result.phi;
    AdamState adam_theta(d, d);
    AdamState adam_phi(d, d);
    const MapSolver solver = training_solver(cfg);
    const RegCoeffs rho = cfg.reg();

    std::vector<Matrix> grads_z(static_cast<std::size_t>(cfg.S));
    Matrix xb;
    result.history.reserve(static_cast<std::size_t>(cfg.epochs));

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        const auto batches = batch_iterator(n, cfg.batch_size, cfg.shuffle, cfg.seed, epoch);
        LossBreakdown epoch_sum;
        for (std::size_t b = 0; b < batches.size(); ++b) {
            const auto& rows = batches[b];
            xb.resize(static_cast<Eigen::Index>(rows.size()), d);
            for (std::size_t r = 0; r < rows.size(); ++r) xb.row(static_cast<Eigen::Index>(r)) = x.row(rows[r]);

            const std::uint64_t step_seed =
                derive_seed(cfg.seed, {0x504du, static_cast<std::uint64_t>(epoch), static_cast<std::uint64_t>(b)});
            const SampleBatch samples = pm_sample(theta, cfg.tau, cfg.S, solver, step_seed);

            LossBreakdown batch_loss;
            Matrix phi_grad = Matrix::Zero(d, d);
            for (int s = 0; s < cfg.S; ++s) {
                SampleEvaluation ev = evaluate_sample(xb, samples[static_cast<std::size_t>(s)].z, phi, rho);
                batch_loss.mse += ev.loss.mse;
                batch_loss.dag_reg += ev.loss.dag_reg;
                batch_loss.sp_reg += ev.loss.sp_reg;
                batch_loss.total += ev.loss.total;
                phi_grad += ev.grad_phi;
                grads_z[static_cast<std::size_t>(s)] = std::move(ev.grad_z);
            }
            const double inv_s = 1.0 / cfg.S;
            batch_loss.mse *= inv_s;
            batch_loss.dag_reg *= inv_s;
            batch_loss.sp_reg *= inv_s;
            batch_loss.total *= inv_s;
            if (!finite(batch_loss)) throw DivergenceError(epoch, static_cast<int>(b), batch_loss);
            phi_grad *= inv_s;

            Matrix theta_grad;
            if (cfg.estimator.method == EstimatorKind::Method::kSte) {
                theta_grad = ste_grad(grads_z, cfg.tau, cfg.ste_mean_over_samples);
            } else {
                if (cfg.imle_target_on_mean_loss)
                    for (auto& g : grads_z) g *= inv_s;
                theta_grad = imle_grad(theta, samples, grads_z, cfg.estimator.lambda, cfg.tau, solver);
            }

            adam_theta.step(theta, theta_grad, cfg.lr_theta);
            adam_phi.step(phi, phi_grad, cfg.lr_phi);
            if (!theta.allFinite() || !phi.allFinite()) throw DivergenceError(epoch, static_cast<int>(b), batch_loss);

            epoch_sum.mse += batch_loss.mse;
            epoch_sum.dag_reg += batch_loss.dag_reg;
            epoch_sum.sp_reg += batch_loss.sp_reg;
            epoch_sum.total += batch_loss.total;
        }
        const double inv_b = 1.0 / static_cast<double>(batches.size());
        LossBreakdown mean{epoch_sum.mse * inv_b, epoch_sum.dag_reg * inv_b, epoch_sum.sp_reg * inv_b,
                           epoch_sum.total * inv_b};
        result.history.push_back(mean);
        if (on_epoch) on_epoch(epoch, mean);
    }

    result.map_digraph = make_map_solver(cfg.M)(theta);
    result.predicted_dag = gfas_max_dag(result.map_digraph, theta).dag;
    return result;
}

}  // namespace dagdb
