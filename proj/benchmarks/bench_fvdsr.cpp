#include <vector>

#include <benchmark/benchmark.h>

#include "fvdsr/oracle.hpp"
#include "fvdsr/scattering.hpp"
#include "fvdsr/spectra.hpp"

using namespace fvdsr;

namespace {

std::vector<double> grid(int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g[i] = 10.0 * i / (n - 1);
    return g;
}

void BM_BarrierScan(benchmark::State& state) {
    const auto e = grid(static_cast<int>(state.range(0)));
    const auto model = DeformationModel::dsr(0.06);
    for (auto _ : state) benchmark::DoNotOptimize(rt_scan(BarrierConfig{}, model, e, 1));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BarrierScan)->Arg(1001)->Arg(100000);

void BM_BarrierScanThreaded(benchmark::State& state) {
    const auto e = grid(1000000);
    const auto model = DeformationModel::gdsr(0.06, 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(rt_scan(BarrierConfig{}, model, e, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_BarrierScanThreaded)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_WellSpectrum(benchmark::State& state) {
    const WellConfig cfg{1.0, 1.0, static_cast<int>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(well_spectrum(cfg, DeformationModel::gdsr(0.02, 1.0)));
}
BENCHMARK(BM_WellSpectrum)->Arg(50)->Arg(1000);

void BM_WellFd(benchmark::State& state) {
    const WellConfig cfg{1.0, 1.0, 5};
    const GridSpec g{0.0, 1.0, static_cast<int>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(well_eigen_fd(cfg, g, 5));
}
BENCHMARK(BM_WellFd)->Arg(2000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_BarrierOde(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(barrier_t_ode(BarrierConfig{}, DeformationModel::sr(), 1.5));
}
BENCHMARK(BM_BarrierOde);

void BM_Threshold(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(supercritical_threshold(StepConfig{}, DeformationModel::gdsr(0.02, 1.0)));
}
BENCHMARK(BM_Threshold);

}  // namespace

BENCHMARK_MAIN();
