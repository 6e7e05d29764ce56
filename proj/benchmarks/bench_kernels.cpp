// Serial vs OpenMP kernel comparison over a dense z-grid.

#include <benchmark/benchmark.h>

#include <vector>

#include "lforge/kernels.hpp"
#include "lforge/model_catalog.hpp"
#include "lforge/transport.hpp"

namespace {

lforge::EigenSystem make_system(int n_max) {
    lforge::ModelParams p;
    p.family = lforge::Family::Krawtchouk;
    p.n_max = n_max;
    return lforge::eigendecompose(lforge::couplings(p));
}

std::vector<double> make_grid(int points, double z_max) {
    std::vector<double> zs(points);
    for (int i = 0; i < points; ++i) {
        zs[i] = z_max * (i + 1) / points;
    }
    return zs;
}

void bm_leakage_serial(benchmark::State& state) {
    const auto sys = make_system(static_cast<int>(state.range(0)));
    const auto zs = make_grid(4096, 8.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lforge::kernels::leakage_scan_serial(sys, zs, 0));
    }
}

void bm_leakage_parallel(benchmark::State& state) {
    const auto sys = make_system(static_cast<int>(state.range(0)));
    const auto zs = make_grid(4096, 8.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lforge::kernels::leakage_scan_parallel(sys, zs, 0));
    }
}

void bm_trace_serial(benchmark::State& state) {
    const auto sys = make_system(static_cast<int>(state.range(0)));
    const auto zs = make_grid(2048, 8.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lforge::kernels::trace_scan_serial(sys, zs, 0));
    }
}

void bm_trace_parallel(benchmark::State& state) {
    const auto sys = make_system(static_cast<int>(state.range(0)));
    const auto zs = make_grid(2048, 8.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lforge::kernels::trace_scan_parallel(sys, zs, 0));
    }
}

}  // namespace

BENCHMARK(bm_leakage_serial)->Arg(16)->Arg(48);
BENCHMARK(bm_leakage_parallel)->Arg(16)->Arg(48);
BENCHMARK(bm_trace_serial)->Arg(16)->Arg(48);
BENCHMARK(bm_trace_parallel)->Arg(16)->Arg(48);

BENCHMARK_MAIN();
