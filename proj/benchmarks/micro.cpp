// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dagdb Authors

#include "dagdb/graphs.hpp"
#include "dagdb/data.hpp"
#include "dagdb/estimators.hpp"
#include "dagdb/maxdag.hpp"
#include "dagdb/model.hpp"
#include "dagdb/pipeline.hpp"
#include "dagdb/sampling.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace dagdb;

Matrix random_theta(int d, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    Matrix t = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (i != j) t(i, j) = 2 * uniform01(rng) - 1;
    return t;
}

void BM_Gfas(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const Matrix theta = random_theta(d, 1);
    const auto z = map_top_m(theta, 3 * d);
    for (auto _ : state) benchmark::DoNotOptimize(gfas_max_dag(z, theta));
}
BENCHMARK(BM_Gfas)->Arg(10)->Arg(30)->Arg(100);

void BM_TopM(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const Matrix theta = random_theta(d, 2);
    for (auto _ : state) benchmark::DoNotOptimize(map_top_m(theta, static_cast<int>(2.8 * d)));
}
BENCHMARK(BM_TopM)->Arg(10)->Arg(30)->Arg(100);

void BM_DagReg(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const Matrix a = map_unconstrained(random_theta(d, 3)).to_real() * 0.1;
    for (auto _ : state) benchmark::DoNotOptimize(dag_reg(a));
}
BENCHMARK(BM_DagReg)->Arg(10)->Arg(30)->Arg(100);

void BM_ExactMaxDag(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const Matrix theta = random_theta(d, 4);
    const auto z = map_unconstrained(theta);
    for (auto _ : state) benchmark::DoNotOptimize(exact_max_dag(z, theta));
}
BENCHMARK(BM_ExactMaxDag)->Arg(6)->Arg(8);

// One optimisation step of the STE_84 preset: sampling, per-sample loss and
// gradients, estimator and both Adam updates.
void BM_TrainingStep(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const auto truth = random_er_dag(d, 2.0, 5);
    Rng rng = make_rng(5);
    const Dataset data = simulate(make_lanm(truth, 1.0, rng), 16, rng);
    TrainConfig cfg = preset("STE_84");
    cfg.M = auto_max_size(expected_er_edges(d, 2.0), cfg.max_size_scale);
    Matrix theta = random_theta(d, 6) * cfg.theta_init_width;
    Matrix phi = random_theta(d, 7);
    AdamState adam_theta(d, d), adam_phi(d, d);
    const MapSolver solver = make_map_solver(cfg.M);
    std::uint64_t step = 0;
    for (auto _ : state) {
        const auto samples = pm_sample(theta, cfg.tau, cfg.S, solver, step++);
        std::vector<Matrix> gz;
        Matrix gphi = Matrix::Zero(d, d);
        for (const auto& s : samples) {
            auto ev = evaluate_sample(data.x, s.z, phi, cfg.reg());
            gz.push_back(std::move(ev.grad_z));
            gphi += ev.grad_phi;
        }
        adam_theta.step(theta, ste_grad(gz, cfg.tau), cfg.lr_theta);
        adam_phi.step(phi, gphi / cfg.S, cfg.lr_phi);
    }
}
BENCHMARK(BM_TrainingStep)->Arg(10)->Arg(30);

}  // namespace

BENCHMARK_MAIN();
