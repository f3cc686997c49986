// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "../src/kernels.hpp"
#include "prefixsel/rtt_sim.hpp"
#include "prefixsel/selectors.hpp"
#include "prefixsel/trace.hpp"

using namespace prefixsel;

namespace {

const HourlyTraceMatrix& trace() {
    static const HourlyTraceMatrix m = [] {
        SyntheticTraceSpec spec;
        spec.prefix_count = 10'000;
        spec.bin_total = 10'000'000'000ULL;
        spec.diurnal_amplitude = 0.3;
        spec.noise_sigma = 0.2;
        spec.seed = 7;
        return synthesize_trace(spec, TimeGrid{});
    }();
    return m;
}

const CoreProfile& profile() {
    static const CoreProfile p = serial::core_profile(trace(), 0.95, std::numbers::e);
    return p;
}

const ProbeLog& probes() {
    static const ProbeLog log = [] {
        RttModel model;
        for (std::uint32_t k = 1; k <= 200; ++k) model.prefixes.push_back(PrefixId::synthetic(k));
        model.transits = {{"T1"}, {"T2"}, {"T3"}, {"T4"}};
        model.base_rtt_ms = {40, 45, 50, 60};
        model.path_spread = 0.4;
        model.noise_sigma = 0.1;
        model.loss_probability = 0.02;
        return generate_probe_log(ProbeScheduleSpec{}, model);
    }();
    return log;
}

void BM_CoreProfileSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(serial::core_profile(trace(), 0.95, std::numbers::e));
}
void BM_CoreProfileOmp(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(omp::core_profile(trace(), 0.95, std::numbers::e));
}

void BM_SelectionSerial(benchmark::State& state) {
    const SelectorConfig config{static_cast<Method>(state.range(0)), static_cast<std::uint32_t>(state.range(1)), 6000};
    for (auto _ : state) benchmark::DoNotOptimize(serial::selection_run(trace(), profile(), config));
}
void BM_SelectionOmp(benchmark::State& state) {
    const SelectorConfig config{static_cast<Method>(state.range(0)), static_cast<std::uint32_t>(state.range(1)), 6000};
    for (auto _ : state) benchmark::DoNotOptimize(omp::selection_run(trace(), profile(), config));
}

void BM_NpSerial(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(serial::physical_np(probes()));
        benchmark::DoNotOptimize(serial::simulate_l1r(probes(), 1));
    }
}
void BM_NpOmp(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(omp::physical_np(probes()));
        benchmark::DoNotOptimize(omp::simulate_l1r(probes(), 1));
    }
}

}  // namespace

BENCHMARK(BM_CoreProfileSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoreProfileOmp)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SelectionSerial)->Args({0, 24})->Args({2, 168})->Args({3, 24})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SelectionOmp)->Args({0, 24})->Args({2, 168})->Args({3, 24})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NpSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NpOmp)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
