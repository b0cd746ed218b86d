#include <gtest/gtest.h>

#include "mvstereo/metrics.hpp"

namespace {

using namespace mvs;

TEST(BadPixel, IdenticalMapsScoreZero) {
  DisparityMap t(4, 4, 8, 3.0f);
  EXPECT_DOUBLE_EQ(bad_pixel_pct(t, t), 0.0);
}

TEST(BadPixel, ReferenceCases) {
  DisparityMap truth(4, 2, 16, 5.0f);
  EXPECT_DOUBLE_EQ(bad_pixel_pct(DisparityMap(4, 2, 16), truth), 100.0);
  DisparityMap est = truth;
  for (int x = 0; x < 4; ++x) est(x, 1) = 9.0f;
  EXPECT_DOUBLE_EQ(bad_pixel_pct(est, truth), 50.0);
}

TEST(BadPixel, CountsInvalidEstimatesAndSkipsInvalidTruth) {
  DisparityMap truth(2, 2, 8, 3.0f);
  truth.invalidate(1, 1);
  DisparityMap est(2, 2, 8, 3.0f);
  est.invalidate(0, 0);
  est(1, 0) = 5.0f;   // exactly at tolerance: good
  est(0, 1) = 5.01f;  // beyond: bad
  est(1, 1) = 0.0f;   // truth invalid: ignored
  EXPECT_NEAR(bad_pixel_pct(est, truth, 2.0), 200.0 / 3.0, 1e-9);
}

TEST(BadPixel, TighterToleranceNeverScoresBetter) {
  DisparityMap truth(5, 1, 8, 2.0f);
  DisparityMap est(5, 1, 8);
  for (int x = 0; x < 5; ++x) est(x, 0) = 2.0f + 0.4f * x;
  double last = 0.0;
  for (double tol : {3.0, 1.5, 1.0, 0.5, 0.1}) {
    const double v = bad_pixel_pct(est, truth, tol);
    EXPECT_GE(v, last);
    last = v;
  }
}

TEST(BadPixel, Errors) {
  EXPECT_THROW(bad_pixel_pct(DisparityMap(2, 2, 4), DisparityMap(2, 2, 4)), ValidationError);
  EXPECT_THROW(bad_pixel_pct(DisparityMap(2, 2, 4), DisparityMap(3, 2, 4)), DimensionError);
}

TEST(BadPixelIn, RestrictsToRegion) {
  DisparityMap truth(3, 1, 8, 1.0f);
  DisparityMap est(3, 1, 8, 1.0f);
  est(2, 0) = 7.0f;
  EXPECT_DOUBLE_EQ(bad_pixel_pct_in(est, truth, BinaryMask(3, 1, {1, 1, 0})), 0.0);
  EXPECT_DOUBLE_EQ(bad_pixel_pct_in(est, truth, BinaryMask(3, 1, {0, 1, 1})), 50.0);
  EXPECT_THROW(bad_pixel_pct_in(est, truth, BinaryMask(3, 1, 0)), ValidationError);
}

TEST(WireDetection, ReferenceCases) {
  DisparityMap truth(20, 10, 16, 3.0f);
  BinaryMask wire(20, 10, 0);
  for (int x = 2; x < 6; ++x) {
    wire(x, 2) = 1;
    truth(x, 2) = 11.0f;
  }
  for (int x = 12; x < 16; ++x) {
    wire(x, 7) = 1;
    truth(x, 7) = 11.0f;
  }
  EXPECT_DOUBLE_EQ(wire_detection_pct(DisparityMap(20, 10, 16), wire, truth), 0.0);
  EXPECT_DOUBLE_EQ(wire_detection_pct(truth, wire, truth), 100.0);
  DisparityMap half(20, 10, 16);
  for (int x = 2; x < 6; ++x) half(x, 2) = 11.0f;
  EXPECT_DOUBLE_EQ(wire_detection_pct(half, wire, truth), 50.0);
}

TEST(WireDetection, NeighbourWithinToleranceOfWireTruth) {
  DisparityMap truth(5, 5, 16, 2.0f);
  BinaryMask wire(5, 5, 0);
  wire(2, 2) = 1;
  truth(2, 2) = 10.0f;
  DisparityMap est = truth;
  est(2, 2) = 2.0f;
  EXPECT_DOUBLE_EQ(wire_detection_pct(est, wire, truth), 0.0);
  est(1, 3) = 9.0f;
  EXPECT_DOUBLE_EQ(wire_detection_pct(est, wire, truth), 100.0);
  est(1, 3) = 2.0f;
  est(0, 0) = 10.0f;  // outside the 3x3 neighbourhood
  EXPECT_DOUBLE_EQ(wire_detection_pct(est, wire, truth), 0.0);
  EXPECT_THROW(wire_detection_pct(est, BinaryMask(5, 5, 0), truth), ValidationError);
}

}  // namespace
