#include <benchmark/benchmark.h>

#include <random>

#include "imf/filters.h"
#include "imf/pipeline.h"
#include "imf/sram_macro.h"

namespace {

imf::BinaryFrame noisy_frame(double density) {
  std::mt19937_64 rng(9);
  std::bernoulli_distribution on(density);
  imf::BinaryFrame f(240, 180);
  for (int y = 0; y < 180; ++y)
    for (int x = 0; x < 240; ++x)
      if (on(rng)) f.set(x, y);
  return f;
}

void BM_Nomf(benchmark::State& state) {
  const imf::BinaryFrame f = noisy_frame(0.1);
  for (auto _ : state) benchmark::DoNotOptimize(imf::nomf(f, {static_cast<int>(state.range(0))}));
  state.SetItemsProcessed(state.iterations() * f.width() * f.height());
}
BENCHMARK(BM_Nomf)->Arg(3)->Arg(5);

void BM_OverlapMedian(benchmark::State& state) {
  const imf::BinaryFrame f = noisy_frame(0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(imf::median_filter_overlap(f, {static_cast<int>(state.range(0))}));
  }
  state.SetItemsProcessed(state.iterations() * f.width() * f.height());
}
BENCHMARK(BM_OverlapMedian)->Arg(3)->Arg(5);

void BM_FilterInMemory(benchmark::State& state) {
  const imf::BinaryFrame f = noisy_frame(0.1);
  const imf::OverdriveModel model;
  const imf::DeviceParams device = model.device_at({});
  imf::MacroState macro = init_macro(imf::MacroGeometry::for_frame(240, 180), device,
                                     model.variation_at({}, 1));
  for (auto _ : state) {
    macro.clear_memory();
    macro.load_frame(f);
    benchmark::DoNotOptimize(macro.filter_in_memory(3, device));
  }
  state.SetItemsProcessed(state.iterations() * f.width() * f.height());
}
BENCHMARK(BM_FilterInMemory);

void BM_Proposals(benchmark::State& state) {
  const imf::BinaryFrame f = imf::nomf(noisy_frame(0.3), {3});
  const imf::TrackerConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(imf::propose_regions(f, cfg));
}
BENCHMARK(BM_Proposals);

void BM_ConnectedComponents(benchmark::State& state) {
  const imf::BinaryFrame f = noisy_frame(0.3);
  for (auto _ : state) benchmark::DoNotOptimize(imf::connected_components(f));
}
BENCHMARK(BM_ConnectedComponents);

}  // namespace
BENCHMARK_MAIN();
