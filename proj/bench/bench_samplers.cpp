// Serial reference vs OpenMP kernels for the samplers. The first argument is
// the number of draws and the second selects the backend (0 serial, 1 parallel).

#include <benchmark/benchmark.h>

#include "fractel/compose.hpp"
#include "fractel/parallel.hpp"
#include "fractel/subord.hpp"
#include "fractel/telegraph.hpp"

using namespace fractel;

namespace {

Exec backend(const benchmark::State& state) { return state.range(1) == 0 ? Exec::serial : Exec::parallel; }

void label(benchmark::State& state) {
  state.SetLabel(state.range(1) == 0 ? "serial" : "parallel");
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_subordinator(benchmark::State& state) {
  for (auto _ : state) {
    auto b = sample_subordinator({0.5, 1.0}, static_cast<std::size_t>(state.range(0)), 1, backend(state));
    benchmark::DoNotOptimize(b.values.data());
  }
  label(state);
}

void bm_telegraph(benchmark::State& state) {
  for (auto _ : state) {
    auto b = sample_telegraph({1.0, 1.0}, 1.0, static_cast<std::size_t>(state.range(0)), 1, backend(state));
    benchmark::DoNotOptimize(b.values.data());
  }
  label(state);
}

void bm_planar(benchmark::State& state) {
  for (auto _ : state) {
    auto b = sample_planar({1.0, 1.0}, 1.0, static_cast<std::size_t>(state.range(0)), 1, backend(state));
    benchmark::DoNotOptimize(b.samples.data());
  }
  label(state);
}

void bm_w_exact_clock(benchmark::State& state) {
  const ModelParams p{0.5, 1.0, 2.0, 1.0, 2};
  for (auto _ : state) {
    auto b = sample_W(p, 1.0, static_cast<std::size_t>(state.range(0)), 1, {}, backend(state));
    benchmark::DoNotOptimize(b.values.data());
  }
  label(state);
}

void bm_w_path_clock(benchmark::State& state) {
  const ModelParams p{1.0 / 3.0, 1.0, 2.0, 1.0, 1};
  for (auto _ : state) {
    auto b = sample_W(p, 1.0, static_cast<std::size_t>(state.range(0)), 1, {}, backend(state));
    benchmark::DoNotOptimize(b.values.data());
  }
  label(state);
}

}  // namespace

BENCHMARK(bm_subordinator)->ArgsProduct({{1 << 16, 1 << 20}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(bm_telegraph)->ArgsProduct({{1 << 16, 1 << 20}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(bm_planar)->ArgsProduct({{1 << 16, 1 << 20}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(bm_w_exact_clock)->ArgsProduct({{1 << 16, 1 << 20}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(bm_w_path_clock)->ArgsProduct({{1 << 10, 1 << 13}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
