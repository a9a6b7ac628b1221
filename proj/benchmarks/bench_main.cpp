// Microbenchmarks for the numerical hot paths: adaptive quadrature, the
// operator application, weak norms, and the iterated kernel norm.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "hlplab/constants.hpp"
#include "hlplab/extremals.hpp"
#include "hlplab/norms.hpp"
#include "hlplab/operators.hpp"
#include "hlplab/quad.hpp"

using namespace hlplab;

namespace {

PiecewisePowerLog flagship_profile() {
    return PiecewisePowerLog({1.0}, {{{2.0, -0.25, 0}}});
}

void BM_integrate_1d_tail(benchmark::State& state) {
    QuadratureConfig cfg;
    cfg.singularity_exponent_hint = -0.25;
    std::vector<double> splits{1.0};
    for (auto _ : state) {
        auto r = integrate_1d(
            [](double x) {
                return std::pow(std::max(1.0, x), -1.5) * std::pow(x, -0.25);
            },
            0.0, std::numeric_limits<double>::infinity(), cfg, splits);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_integrate_1d_tail);

void BM_apply_hlp(benchmark::State& state) {
    const PiecewisePowerLog f = flagship_profile();
    double r = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_hlp(f, 1, r));
        r = r < 100.0 ? r * 1.7 : 0.1;
    }
}
BENCHMARK(BM_apply_hlp);

void BM_apply_hlp_symbolic(benchmark::State& state) {
    const PiecewisePowerLog f = flagship_profile();
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_hlp_symbolic(f, 1));
    }
}
BENCHMARK(BM_apply_hlp_symbolic);

void BM_weak_norm_exact(benchmark::State& state) {
    const PiecewisePowerLog image =
        apply_hlp_symbolic(flagship_profile(), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(weak_norm(image, 2.0, 0.0, 1));
    }
}
BENCHMARK(BM_weak_norm_exact);

void BM_weak_norm_numeric(benchmark::State& state) {
    const PiecewisePowerLog f = flagship_profile();
    auto g = [&f](double r) { return apply_hlp(f, 1, r); };
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            weak_norm_numeric(g, 2.0, 0.0, 1, ShapeHint::Decreasing));
    }
}
BENCHMARK(BM_weak_norm_numeric);

void BM_bilinear_operator(benchmark::State& state) {
    RadialKernel K{KernelForm::HilbertSum, 2, 1, HardyRadius::Euclidean, {}};
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-6;
    std::vector<PiecewisePowerLog> fs{
        PiecewisePowerLog({1.0}, {{{1.0, 0.0, 0}}}),
        PiecewisePowerLog({1.0}, {{{1.0, 0.0, 0}}})};
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_kernel_operator(K, fs, 2.0, cfg));
    }
}
BENCHMARK(BM_bilinear_operator);

void BM_kernel_constant_m2(benchmark::State& state) {
    RadialKernel K{KernelForm::HlpMax, 2, 1, HardyRadius::Euclidean, {}};
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-8;
    for (auto _ : state) {
        auto M = kernel_constant_M(K, {0.5, 0.5}, {2.0, 2.0}, 1, 2, cfg);
        benchmark::DoNotOptimize(M.value);
    }
}
BENCHMARK(BM_kernel_constant_m2);

void BM_distribution_measure_mc(benchmark::State& state) {
    SpaceParams sp;
    sp.n = 1;
    sp.p = 1.0;
    sp.q = 1.0;
    const PiecewisePowerLog image =
        closed_form_image({ExtremalId::Thm22, {}}, sp);
    QuadratureConfig cfg;
    cfg.mc_samples = state.range(0);
    cfg.mc_seed = 17;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            distribution_measure_mc(image, 0.5, 0.0, 1, cfg));
    }
}
BENCHMARK(BM_distribution_measure_mc)->Arg(100000)->Arg(1000000);

}  // namespace

BENCHMARK_MAIN();
