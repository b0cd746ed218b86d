#include <atomic>

#include <gtest/gtest.h>

#include "mvstereo/parallel.hpp"
#include "mvstereo/polar.hpp"
#include "mvstereo/trinocular.hpp"
#include "mvstereo/wires.hpp"
#include "support/scenes.hpp"

namespace {

using namespace mvs;

class ThreadCount : public ::testing::Test {
 protected:
  void TearDown() override { set_thread_count(0); }
};

TEST_F(ThreadCount, ParallelForVisitsEachIndexOnce) {
  for (int threads : {1, 3, 8}) {
    set_thread_count(threads);
    EXPECT_EQ(thread_count(), threads);
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(0, 1000, [&](int i) { hits[i]++; });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
  parallel_for(5, 5, [](int) { FAIL(); });
}

TEST_F(ThreadCount, NonPositiveSelectsHardware) {
  set_thread_count(0);
  EXPECT_GE(thread_count(), 1);
}

TEST_F(ThreadCount, PipelinesAreBitIdenticalAcrossThreadCounts) {
  const auto spec = mvs::testing::wire_scene(2);
  const auto b = generate_scene(spec);
  PipelineConfig cfg;
  cfg.num_disparities = spec.num_disparities;
  const auto prob = WireProbabilityMap::from_gray(*b.wire_prob);

  auto run = [&] {
    const auto dense = trinocular_pipeline(b.right, b.left, b.top, cfg);
    const auto wires = semantic_wire_disparities(b.right, b.left, b.top, prob, cfg);
    return merge_wire_disparities(dense, wires.disparities);
  };
  set_thread_count(1);
  const auto single = run();
  for (int threads : {2, 5, 8}) {
    set_thread_count(threads);
    EXPECT_EQ(run(), single) << threads;
  }
}

}  // namespace
