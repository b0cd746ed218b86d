#include <benchmark/benchmark.h>

#include "mvstereo/census.hpp"
#include "mvstereo/disparity.hpp"
#include "mvstereo/parallel.hpp"
#include "mvstereo/scene.hpp"
#include "mvstereo/sgm.hpp"
#include "mvstereo/trinocular.hpp"

namespace {

using namespace mvs;

SceneBundle scene(int size) {
  SceneSpec s;
  s.width = size;
  s.height = size;
  s.num_disparities = 64;
  s.seed = 3;
  PlaneObject p;
  p.disparity = 12.0;
  s.planes.push_back(p);
  return generate_scene(s);
}

void BM_Census(benchmark::State& state) {
  const auto b = scene(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(census_transform(b.right, 3));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_Census)->Arg(256)->Arg(512);

void BM_HammingVolume(benchmark::State& state) {
  const auto b = scene(256);
  const auto r = census_transform(b.right, 3);
  const auto l = census_transform(b.left, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(hamming_cost_volume(r, l, static_cast<int>(state.range(0)), MatchDirection::Leftward));
}
BENCHMARK(BM_HammingVolume)->Arg(32)->Arg(64);

void BM_Sgm(benchmark::State& state) {
  const auto b = scene(256);
  const auto vol = hamming_cost_volume(census_transform(b.right, 3), census_transform(b.left, 3), 64,
                                       MatchDirection::Leftward);
  set_thread_count(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sgm_aggregate(vol, 7.0, 86.0));
  set_thread_count(0);
}
BENCHMARK(BM_Sgm)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Binocular(benchmark::State& state) {
  const auto b = scene(static_cast<int>(state.range(0)));
  PipelineConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(binocular_pipeline(b.left, b.right, cfg));
}
BENCHMARK(BM_Binocular)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Trinocular(benchmark::State& state) {
  const auto b = scene(256);
  PipelineConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(trinocular_pipeline(b.right, b.left, b.top, cfg));
}
BENCHMARK(BM_Trinocular)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
