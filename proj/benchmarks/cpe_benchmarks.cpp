#include "cpe/dedup.hpp"
#include "cpe/derivatives.hpp"
#include "cpe/fit.hpp"
#include "cpe/newton_extract.hpp"
#include "cpe/pl_critical.hpp"
#include "cpe/span_filter.hpp"
#include "cpe/synthetic.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

namespace {

const cpe::GridScalarField& schwefel_field() {
    static const auto field = [] {
        cpe::SchwefelSpec spec;
        spec.domain = std::pair{-2400.0, 2400.0};
        return cpe::generate_field(spec);
    }();
    return field;
}

const cpe::TensorSplineModel& schwefel_model() {
    static const auto model = [] {
        const std::size_t n[2] = {100, 100};
        return cpe::fit_fixed(schwefel_field(), 3, n).model;
    }();
    return model;
}

std::vector<std::vector<double>> random_points(std::size_t n, std::size_t dim) {
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
    for (auto& p : pts) {
        for (auto& v : p) v = u(rng);
    }
    return pts;
}

void BM_Evaluate(benchmark::State& state) {
    const auto& model = schwefel_model();
    const auto pts = random_points(1024, 2);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(model.evaluate(pts[i++ & 1023]));
    }
}
BENCHMARK(BM_Evaluate);

void BM_GradientHessian(benchmark::State& state) {
    const cpe::DerivativeSet derivs(schwefel_model());
    const auto pts = random_points(1024, 2);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cpe::gradient_and_hessian(derivs, pts[i++ & 1023]));
    }
}
BENCHMARK(BM_GradientHessian);

void BM_FitSchwefel(benchmark::State& state) {
    const std::size_t n[2] = {100, 100};
    for (auto _ : state) benchmark::DoNotOptimize(cpe::fit_fixed(schwefel_field(), 3, n));
}
BENCHMARK(BM_FitSchwefel)->Unit(benchmark::kMillisecond);

void BM_FilterSpans(benchmark::State& state) {
    const cpe::DerivativeSet derivs(schwefel_model());
    for (auto _ : state) benchmark::DoNotOptimize(cpe::filter_spans(schwefel_model(), derivs, 1));
}
BENCHMARK(BM_FilterSpans)->Unit(benchmark::kMillisecond);

void BM_ExtractSchwefel(benchmark::State& state) {
    cpe::NewtonConfig cfg;
    cfg.threads = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(cpe::extract_all(schwefel_model(), cfg));
}
BENCHMARK(BM_ExtractSchwefel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Dedup(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> coords(2 * n);
    for (auto& c : coords) c = u(rng);
    // About one point per 20*tau bucket, as for sparse critical points.
    const double tau = 0.05 / std::sqrt(static_cast<double>(n));
    for (auto _ : state) benchmark::DoNotOptimize(cpe::dedup_indices(coords, 2, tau));
    state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(BM_Dedup)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity();

void BM_PLCritical(benchmark::State& state) {
    const auto ratio = static_cast<std::size_t>(state.range(0));
    const auto res = cpe::upsampled_resolution(schwefel_model().source_samples(), ratio);
    const auto grid = cpe::sample_grid(schwefel_model(), res, 1);
    for (auto _ : state) benchmark::DoNotOptimize(cpe::pl_critical_points(grid, {false, 1}));
}
BENCHMARK(BM_PLCritical)->Arg(1)->Arg(4)->Arg(25)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
