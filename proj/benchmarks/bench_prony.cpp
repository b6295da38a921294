#include <benchmark/benchmark.h>

#include "prony/decimation.hpp"
#include "prony/experiments.hpp"
#include "prony/linalg.hpp"
#include "prony/pencil.hpp"
#include "prony/recovery.hpp"
#include "prony/rng.hpp"
#include "prony/rootfind.hpp"
#include "prony/theory.hpp"

namespace {

using namespace prony;

Signal bench_signal(int n, std::vector<int> sizes, double delta) {
    return generate_clustered_signal({n, std::move(sizes), delta, 12345});
}

void BM_MomentsOf(benchmark::State& state) {
    const Signal sig = bench_signal(3, {2, 1}, 1e-2);
    const int count = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(moments_of(sig, count));
}
BENCHMARK(BM_MomentsOf)->Arg(6)->Arg(64)->Arg(256);

void BM_PronyClassical(benchmark::State& state) {
    const Signal sig = bench_signal(static_cast<int>(state.range(0)),
                                    {static_cast<int>(state.range(0))}, 5e-2);
    const int n = sig.config.n;
    const MomentVector m = perturb(moments_of(sig, 2 * n), {1e-12, {}, 7});
    for (auto _ : state) benchmark::DoNotOptimize(prony_classical(m, n, false));
}
BENCHMARK(BM_PronyClassical)->Arg(2)->Arg(4)->Arg(6);

void BM_PronyHomogeneous(benchmark::State& state) {
    const Signal sig = bench_signal(3, {2, 1}, 1e-2);
    const MomentVector m = perturb(moments_of(sig, 6), {1e-12, {}, 7});
    for (auto _ : state) benchmark::DoNotOptimize(prony_homogeneous(m, 3, false));
}
BENCHMARK(BM_PronyHomogeneous);

void BM_DecimatedProny(benchmark::State& state) {
    const double omega = static_cast<double>(state.range(0));
    const Signal sig = bench_signal(3, {2, 1}, 1.0 / (omega * 100));
    const MomentVector m =
        perturb(moments_of(sig, static_cast<int>(omega) + 1), {1e-13, {}, 7});
    const DecimationPlan plan = DecimationPlan::default_plan(omega, 3);
    for (auto _ : state) benchmark::DoNotOptimize(decimated_prony(m, 3, plan, false));
}
BENCHMARK(BM_DecimatedProny)->Arg(30)->Arg(60)->Arg(120);

void BM_MatrixPencil(benchmark::State& state) {
    const double omega = static_cast<double>(state.range(0));
    const Signal sig = bench_signal(3, {2, 1}, 1.0 / (omega * 100));
    const MomentVector m =
        perturb(moments_of(sig, static_cast<int>(omega) + 1), {1e-13, {}, 7});
    for (auto _ : state) benchmark::DoNotOptimize(matrix_pencil(m, 3, PencilParams::defaults(), false));
}
BENCHMARK(BM_MatrixPencil)->Arg(30)->Arg(60)->Arg(120);

void BM_Roots(benchmark::State& state) {
    const Signal sig = bench_signal(static_cast<int>(state.range(0)),
                                    {static_cast<int>(state.range(0))}, 2e-2);
    const MonicPolynomial p = coeffs_from_roots(sig.nodes);
    for (auto _ : state) benchmark::DoNotOptimize(roots(p));
}
BENCHMARK(BM_Roots)->Arg(3)->Arg(6)->Arg(8);

void BM_JacobiSvd(benchmark::State& state) {
    const int rows = static_cast<int>(state.range(0));
    Rng rng(9);
    ComplexMatrix a(rows, rows + 1);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j <= rows; ++j) a(i, j) = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    for (auto _ : state) benchmark::DoNotOptimize(jacobi_svd(a));
}
BENCHMARK(BM_JacobiSvd)->Arg(8)->Arg(24)->Arg(48);

void BM_VerifyExpansion(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<int> sizes{2};
    for (int i = 2; i < n; ++i) sizes.push_back(1);
    const Signal sig = bench_signal(n, sizes, 5e-2);
    const MomentVector m = moments_of(sig, 2 * n);
    const cvector d = draw_tolerance_coeffs(2 * n, 3);
    const std::vector<cplx> zs{cplx{1.1, 0.2}, cplx{0.9, -0.3}};
    const cvector eps = unit_circle_eps_samples(n + 2);
    for (auto _ : state) benchmark::DoNotOptimize(verify_expansion(m.values, d, n, zs, eps));
}
BENCHMARK(BM_VerifyExpansion)->Arg(2)->Arg(3)->Arg(4);

void BM_SweepPoint(benchmark::State& state) {
    SweepSpec spec;
    spec.method = Method::classical;
    spec.delta_grid = log_grid(1e-2, 1e-1, 5);
    spec.trials_per_point = 4;
    spec.epsilon_fixed = 1e-14;
    spec.seed = 3;
    for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec));
}
BENCHMARK(BM_SweepPoint);

} // namespace

BENCHMARK_MAIN();
