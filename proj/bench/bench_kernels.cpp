#include <benchmark/benchmark.h>

#include "roughlab/estimator.hpp"
#include "roughlab/fgn.hpp"
#include "roughlab/pathvar.hpp"
#include "roughlab/random.hpp"
#include "roughlab/simulate.hpp"
#include "roughlab/volatility.hpp"

namespace {

using namespace roughlab;

const SampledPath& fbm_path() {
    static const SampledPath path = simulate_fbm(0.3, 90000, 1.0, 17);
    return path;
}

void BM_CurveSerial(benchmark::State& state) {
    const BlockedIncrements inc(fbm_path(), 300);
    const auto grid = default_h_grid();
    for (auto _ : state) {
        benchmark::DoNotOptimize(statistic_curve_serial(inc, grid, 1.0));
    }
}
BENCHMARK(BM_CurveSerial)->Unit(benchmark::kMillisecond);

void BM_CurveParallel(benchmark::State& state) {
    const BlockedIncrements inc(fbm_path(), 300);
    const auto grid = default_h_grid();
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(statistic_curve(inc, grid, 1.0, threads));
    }
}
BENCHMARK(BM_CurveParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Estimate(benchmark::State& state) {
    const auto grid = default_h_grid();
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_roughness(fbm_path(), 300, grid).h_hat);
    }
}
BENCHMARK(BM_Estimate)->Unit(benchmark::kMillisecond);

void BM_FgnSample(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto sampler = make_fgn_sampler(0.3, n);
    NormalStream normals(3);
    std::vector<double> out(n);
    for (auto _ : state) {
        sampler.sample(normals, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FgnSample)->RangeMultiplier(16)->Range(1 << 12, 1 << 22)->Unit(benchmark::kMillisecond);

void BM_MarketWindows(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(observe_market_windows(OuSvModel{}, 1000, 300, kTradingSecond, 9));
    }
    state.SetItemsProcessed(state.iterations() * 300000);
}
BENCHMARK(BM_MarketWindows)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
