#include <ghostlight/experiments.hpp>

#include <benchmark/benchmark.h>

using namespace ghostlight;

namespace {

const WaveContext& ctx() {
    static const WaveContext c(7.02e-4);
    return c;
}

const PathGeometry kImaging{10.0, 40.0, 30.0, 10.0, 20.0, true};

void bm_reduced_point(benchmark::State& state) {
    const GaussianSchellSource src{5.0, 1e-5};
    const PiecewiseAperture obj = double_slit(0.01, 0.03);
    EngineConfig cfg;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            cross_correlation(0.0, 0.015, kImaging, ctx(), src, obj, cfg));
}
BENCHMARK(bm_reduced_point);

void bm_brute_point(benchmark::State& state) {
    const GaussianSchellSource src{0.5, 0.01};
    const PiecewiseAperture obj = double_slit(0.01, 0.03);
    EngineConfig cfg;
    cfg.engine = Engine::brute;
    cfg.n_source = 129;
    cfg.n_aperture = 32;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            cross_correlation(0.0, 0.015, kImaging, ctx(), src, obj, cfg));
}
BENCHMARK(bm_brute_point);

void bm_scan(benchmark::State& state) {
    Scenario s = preset("fig2a").scenario;
    s.detector.points = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_scenario(s));
}
BENCHMARK(bm_scan)->Arg(51)->Arg(201);

void bm_blackbody_fit(benchmark::State& state) {
    BlackbodySpectrumParams p;
    p.temperature = 3000.0;
    for (auto _ : state) benchmark::DoNotOptimize(fit_coherence_width(p));
}
BENCHMARK(bm_blackbody_fit);

} // namespace

BENCHMARK_MAIN();
