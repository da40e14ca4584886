#include <benchmark/benchmark.h>

#include "netctl/experiment.hpp"

using namespace netctl;

namespace {

Graph bench_graph(int n) { return generate_geometric(n, 5, RngStream{1, 0}, true); }

void bm_eigendecompose(benchmark::State& state) {
    Graph g = bench_graph(static_cast<int>(state.range(0)));
    ShiftOperator s = build_shift(g, ShiftKind::Laplacian);
    for (auto _ : state) benchmark::DoNotOptimize(eigendecompose(s));
}
BENCHMARK(bm_eigendecompose)->Arg(50)->Arg(100)->Arg(200);

void bm_q_step_laplacian(benchmark::State& state) {
    Graph g = bench_graph(static_cast<int>(state.range(0)));
    const double eps = DiffusionModel::max_stable_step(g);
    Eigen::MatrixXd w = g.adjacency();
    Eigen::VectorXd d = g.degrees();
    Eigen::MatrixXd q = Eigen::MatrixXd::Identity(g.node_count(), g.node_count());
    for (auto _ : state) benchmark::DoNotOptimize(q_step_laplacian(q, w, d, eps, 0.95));
}
BENCHMARK(bm_q_step_laplacian)->Arg(50)->Arg(100)->Arg(200);

void bm_mse_coefficients(benchmark::State& state) {
    Graph g = bench_graph(static_cast<int>(state.range(0)));
    DiffusionModel model = DiffusionModel::laplacian_heat(DiffusionModel::max_stable_step(g));
    auto basis = eigendecompose(build_shift(g, ShiftKind::Laplacian));
    Eigen::MatrixXd h = bandlimiting_filter(basis, 10);
    TargetSpectrum ts = target_spectrum(SpectrumShape::LinearDecay, 10);
    Eigen::VectorXd target = basis.band(10) * ts.band.coefficients;
    for (auto _ : state)
        benchmark::DoNotOptimize(compute_mse_coefficients(model, g, 0.95, h, target, 8));
}
BENCHMARK(bm_mse_coefficients)->Arg(50)->Arg(100);

void bm_greedy_biased(benchmark::State& state) {
    Graph g = bench_graph(static_cast<int>(state.range(0)));
    DiffusionModel model = DiffusionModel::laplacian_heat(DiffusionModel::max_stable_step(g));
    auto basis = eigendecompose(build_shift(g, ShiftKind::Laplacian));
    Eigen::MatrixXd h = bandlimiting_filter(basis, 10);
    TargetSpectrum ts = target_spectrum(SpectrumShape::LinearDecay, 10);
    Eigen::VectorXd target = basis.band(10) * ts.band.coefficients;
    auto stacked = stack(compute_mse_coefficients(model, g, 0.95, h, target, 8));
    for (auto _ : state) benchmark::DoNotOptimize(greedy_select_biased(8, 8, stacked));
}
BENCHMARK(bm_greedy_biased)->Arg(50)->Arg(100);

void bm_simulate(benchmark::State& state) {
    Graph g = bench_graph(static_cast<int>(state.range(0)));
    DiffusionModel model = DiffusionModel::laplacian_heat(DiffusionModel::max_stable_step(g));
    NodeSelection sel{{0, 1, 2, 3}};
    ControlSequence ctrl = ControlSequence::zero(8, 4);
    std::uint64_t r = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            simulate(model, g, 0.95, sel, ctrl, RngStream{2, r++}));
}
BENCHMARK(bm_simulate)->Arg(50)->Arg(100)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
