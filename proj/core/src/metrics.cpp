#include "mvstereo/metrics.hpp"

#include <cmath>

namespace mvs {
namespace {

void require_same(const DisparityMap& a, const auto& b) {
  if (!a.same_shape(b)) throw DimensionError("metric inputs differ in size");
}

bool is_bad(const DisparityMap& est, const DisparityMap& truth, int x, int y, double tol) {
  return !est.is_valid(x, y) || std::abs(static_cast<double>(est(x, y)) - truth(x, y)) > tol;
}

}  // namespace

double bad_pixel_pct(const DisparityMap& est, const DisparityMap& truth, double tol) {
  require_same(est, truth);
  std::size_t total = 0;
  std::size_t bad = 0;
  for (int y = 0; y < truth.height(); ++y) {
    for (int x = 0; x < truth.width(); ++x) {
      if (!truth.is_valid(x, y)) continue;
      ++total;
      if (is_bad(est, truth, x, y, tol)) ++bad;
    }
  }
  if (total == 0) throw ValidationError("ground truth has no valid pixels");
  return 100.0 * static_cast<double>(bad) / static_cast<double>(total);
}

double bad_pixel_pct_in(const DisparityMap& est, const DisparityMap& truth, const BinaryMask& region,
                        double tol) {
  require_same(est, truth);
  require_same(est, region);
  std::size_t total = 0;
  std::size_t bad = 0;
  for (int y = 0; y < truth.height(); ++y) {
    for (int x = 0; x < truth.width(); ++x) {
      if (!region(x, y) || !truth.is_valid(x, y)) continue;
      ++total;
      if (is_bad(est, truth, x, y, tol)) ++bad;
    }
  }
  if (total == 0) throw ValidationError("region has no pixels with valid ground truth");
  return 100.0 * static_cast<double>(bad) / static_cast<double>(total);
}

double wire_detection_pct(const DisparityMap& est, const BinaryMask& wire_mask, const DisparityMap& truth,
                          double tol) {
  require_same(est, truth);
  require_same(est, wire_mask);
  std::size_t total = 0;
  std::size_t hits = 0;
  for (int y = 0; y < wire_mask.height(); ++y) {
    for (int x = 0; x < wire_mask.width(); ++x) {
      if (!wire_mask(x, y)) continue;
      ++total;
      if (!truth.is_valid(x, y)) continue;
      bool hit = false;
      for (int dy = -1; dy <= 1 && !hit; ++dy) {
        for (int dx = -1; dx <= 1 && !hit; ++dx) {
          const int qx = x + dx;
          const int qy = y + dy;
          hit = est.contains(qx, qy) && est.is_valid(qx, qy) &&
                std::abs(static_cast<double>(est(qx, qy)) - truth(x, y)) <= tol;
        }
      }
      if (hit) ++hits;
    }
  }
  if (total == 0) throw ValidationError("wire mask is empty");
  return 100.0 * static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace mvs
