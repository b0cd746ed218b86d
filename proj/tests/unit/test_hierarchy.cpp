#include <random>

#include <gtest/gtest.h>

#include "mvstereo/disparity.hpp"
#include "mvstereo/hierarchy.hpp"
#include "mvstereo/sgm.hpp"
#include "oracles/families.hpp"
#include "support/scenes.hpp"

namespace {

using namespace mvs;

TEST(CostPyramid, LevelShapes) {
  std::mt19937_64 rng(1);
  PipelineConfig cfg;
  cfg.num_disparities = 9;
  cfg.max_scale = 3;
  const auto pyr = build_cost_pyramid(oracle::random_image(rng, 21, 13), oracle::random_image(rng, 21, 13), cfg,
                                      MatchDirection::Leftward);
  ASSERT_EQ(pyr.levels.size(), 3u);
  EXPECT_TRUE(pyr.warnings.empty());
  EXPECT_EQ(pyr.levels[0].width(), 21);
  EXPECT_EQ(pyr.levels[1].width(), 10);
  EXPECT_EQ(pyr.levels[2].width(), 5);
  EXPECT_EQ(pyr.levels[2].height(), 3);
  EXPECT_EQ(pyr.levels[0].num_disparities(), 9);
  EXPECT_EQ(pyr.levels[1].num_disparities(), 5);
  EXPECT_EQ(pyr.levels[2].num_disparities(), 3);
}

TEST(CostPyramid, PowerOfTwoShapes) {
  PipelineConfig cfg;
  cfg.num_disparities = 32;
  cfg.max_scale = 3;
  const auto pyr = build_cost_pyramid(GrayImage(64, 64, 3), GrayImage(64, 64, 3), cfg, MatchDirection::Leftward);
  ASSERT_EQ(pyr.levels.size(), 3u);
  for (int s = 0; s < 3; ++s) {
    EXPECT_EQ(pyr.levels[s].width(), 64 >> s);
    EXPECT_EQ(pyr.levels[s].height(), 64 >> s);
    EXPECT_EQ(pyr.levels[s].num_disparities(), 32 >> s);
  }
}

TEST(CostPyramid, SingleLevelIsFlatVolume) {
  std::mt19937_64 rng(12);
  const auto a = oracle::random_image(rng, 20, 14);
  const auto b = oracle::random_image(rng, 20, 14);
  PipelineConfig cfg;
  cfg.max_scale = 1;
  cfg.num_disparities = 6;
  const auto pyr = build_cost_pyramid(a, b, cfg, MatchDirection::Upward);
  ASSERT_EQ(pyr.levels.size(), 1u);
  EXPECT_EQ(pyr.levels[0], hamming_cost_volume(census_transform(a, 3), census_transform(b, 3), 6, MatchDirection::Upward));
}

TEST(CostPyramid, CoarseLevelMatchesIndependentRecomputation) {
  std::mt19937_64 rng(13);
  const auto a = oracle::random_image(rng, 32, 32);
  const auto b = oracle::random_image(rng, 32, 32);
  PipelineConfig cfg;
  cfg.max_scale = 2;
  cfg.num_disparities = 8;
  cfg.window_radius = 2;
  const auto pyr = build_cost_pyramid(a, b, cfg, MatchDirection::Leftward);
  const auto ha = oracle::block_mean_half(a);
  const auto hb = oracle::block_mean_half(b);
  const auto& level = pyr.levels.at(1);
  ASSERT_EQ(level.num_disparities(), 4);
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 16; ++x)
      for (int d = 0; d < 4; ++d) EXPECT_EQ(level(x, y, d), oracle::hamming_cost(ha, hb, x, y, d, 2, false));
}

TEST(CostPyramid, SmallImagesDropLevelsWithWarning) {
  PipelineConfig cfg;
  cfg.max_scale = 5;
  cfg.num_disparities = 4;
  const auto pyr = build_cost_pyramid(GrayImage(4, 4, 1), GrayImage(4, 4, 1), cfg, MatchDirection::Leftward);
  EXPECT_EQ(pyr.levels.size(), 3u);
  EXPECT_FALSE(pyr.warnings.empty());
}

TEST(CostPyramid, RejectsMismatchedPair) {
  PipelineConfig cfg;
  EXPECT_THROW(build_cost_pyramid(GrayImage(8, 8), GrayImage(8, 9), cfg, MatchDirection::Leftward), DimensionError);
}

TEST(Accumulate, SingleLevelIsIdentity) {
  std::mt19937_64 rng(2);
  CostPyramid pyr;
  pyr.levels.push_back(oracle::random_volume(rng, 5, 4, 6, 48));
  EXPECT_EQ(accumulate_hierarchy(pyr), pyr.levels[0]);
}

TEST(Accumulate, HandComputedTwoLevels) {
  CostPyramid pyr;
  pyr.levels.emplace_back(2, 2, 4, 0.0f);
  CostVolume coarse(1, 1, 2);
  coarse(0, 0, 0) = 10.0f;
  coarse(0, 0, 1) = 20.0f;
  pyr.levels.push_back(coarse);
  const auto acc = accumulate_hierarchy(pyr);
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 2; ++x) {
      EXPECT_EQ(acc(x, y, 0), 10.0f);
      EXPECT_EQ(acc(x, y, 1), 15.0f);
      EXPECT_EQ(acc(x, y, 2), 20.0f);
      EXPECT_EQ(acc(x, y, 3), 20.0f);
    }
}

TEST(Accumulate, ZeroCoarseLevelsLeaveFineUnchanged) {
  std::mt19937_64 rng(3);
  CostPyramid pyr;
  pyr.levels.push_back(oracle::random_volume(rng, 8, 8, 8, 48));
  pyr.levels.emplace_back(4, 4, 4, 0.0f);
  pyr.levels.emplace_back(2, 2, 2, 0.0f);
  EXPECT_EQ(accumulate_hierarchy(pyr), pyr.levels[0]);
}

TEST(Accumulate, ConstantCoarseLevelsPreserveArgmin) {
  std::mt19937_64 rng(5);
  CostPyramid pyr;
  pyr.levels.push_back(oracle::random_volume(rng, 8, 6, 8, 48));
  pyr.levels.emplace_back(4, 3, 4, 17.0f);
  pyr.levels.emplace_back(2, 1, 2, 5.0f);
  const auto acc = accumulate_hierarchy(pyr);
  for (int y = 0; y < 6; ++y)
    for (int x = 0; x < 8; ++x) EXPECT_EQ(argmin_cost(acc.costs(x, y)), argmin_cost(pyr.levels[0].costs(x, y)));
}

TEST(Accumulate, CascadesThroughEveryLevel) {
  CostPyramid pyr;
  pyr.levels.emplace_back(4, 4, 4, 1.0f);
  pyr.levels.emplace_back(2, 2, 2, 2.0f);
  pyr.levels.emplace_back(1, 1, 1, 4.0f);
  const auto acc = accumulate_hierarchy(pyr);
  for (float c : acc.data()) EXPECT_EQ(c, 7.0f);
}

TEST(Accumulate, MatchesOracleOnRandomPyramids) {
  const auto r = oracle::hierarchy_family(17, 60);
  EXPECT_TRUE(r.passed()) << r.mismatches << " mismatches, max rel err " << r.max_rel_err;
}

TEST(Accumulate, NonNegativeAndMonotoneInInputs) {
  std::mt19937_64 rng(4);
  PipelineConfig cfg;
  cfg.num_disparities = 8;
  const auto a = oracle::random_image(rng, 16, 16);
  const auto b = oracle::random_image(rng, 16, 16);
  const auto pyr = build_cost_pyramid(a, b, cfg, MatchDirection::Leftward);
  const auto acc = accumulate_hierarchy(pyr);
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 16; ++x)
      for (int d = 0; d < 8; ++d) EXPECT_GE(acc(x, y, d), pyr.levels[0](x, y, d));
}

TEST(Accumulate, ResolvesRepeatingPattern) {
  // period-4 stripes under a 7x7 window: at full resolution d and d +- 4 look
  // alike, the coarse levels tell them apart
  const auto spec = mvs::testing::stripe_scene(1);
  const auto b = generate_scene(spec);
  PipelineConfig cfg;
  cfg.num_disparities = spec.num_disparities;
  cfg.window_radius = 3;
  auto argmins = [&](int max_scale, bool aggregate) {
    cfg.max_scale = max_scale;
    auto vol = accumulate_hierarchy(build_cost_pyramid(b.right, b.left, cfg, MatchDirection::Leftward));
    if (aggregate) vol = sgm_aggregate(vol, cfg.effective_p1(), cfg.effective_p2());
    return vol;
  };
  const auto hier = argmins(3, true);
  const auto flat_raw = argmins(1, false);
  const auto flat_sgm = argmins(1, true);
  const int margin = 8;
  int n = 0, hier_wrong = 0, flat_raw_wrong = 0, flat_sgm_wrong = 0;
  for (int y = margin; y < spec.height - margin; ++y)
    for (int x = margin; x + 10 + margin < spec.width; ++x) {
      ++n;
      hier_wrong += argmin_cost(hier.costs(x, y)) != 10;
      flat_raw_wrong += argmin_cost(flat_raw.costs(x, y)) != 10;
      flat_sgm_wrong += argmin_cost(flat_sgm.costs(x, y)) != 10;
    }
  EXPECT_EQ(hier_wrong, 0);
  EXPECT_GE(flat_raw_wrong, n / 5);
  EXPECT_GE(flat_sgm_wrong, n / 5);
}

TEST(Accumulate, EmptyPyramidThrows) { EXPECT_THROW(accumulate_hierarchy(CostPyramid{}), ValidationError); }

}  // namespace
