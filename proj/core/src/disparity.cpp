#include "mvstereo/disparity.hpp"

#include <cmath>
#include <limits>

#include "mvstereo/hierarchy.hpp"
#include "mvstereo/parallel.hpp"
#include "mvstereo/sgm.hpp"

namespace mvs {

int argmin_cost(std::span<const float> costs) {
  int best = 0;
  for (int d = 1; d < static_cast<int>(costs.size()); ++d) {
    if (costs[d] < costs[best]) best = d;
  }
  return best;
}

DisparityMap select_wta(const CostVolume& vol) {
  DisparityMap map(vol.width(), vol.height(), vol.num_disparities());
  parallel_for(0, vol.height(), [&](int y) {
    for (int x = 0; x < vol.width(); ++x) {
      map(x, y) = static_cast<float>(argmin_cost(vol.costs(x, y)));
    }
  });
  return map;
}

bool is_ambiguous(std::span<const float> costs, int best_d, double ratio) {
  double second = std::numeric_limits<double>::infinity();
  for (int d = 0; d < static_cast<int>(costs.size()); ++d) {
    if (std::abs(d - best_d) > 1) second = std::min(second, static_cast<double>(costs[d]));
  }
  return static_cast<double>(costs[best_d]) >= (1.0 - ratio) * second;
}

DisparityMap uniqueness_filter(const CostVolume& vol, const DisparityMap& map, double ratio) {
  if (!map.same_shape(vol)) throw DimensionError("disparity map and cost volume differ in size");
  DisparityMap out = map;
  parallel_for(0, vol.height(), [&](int y) {
    for (int x = 0; x < vol.width(); ++x) {
      if (!map.is_valid(x, y)) continue;
      const int best = static_cast<int>(std::lround(map(x, y)));
      if (is_ambiguous(vol.costs(x, y), best, ratio)) out.invalidate(x, y);
    }
  });
  return out;
}

double parabola_offset(double c_prev, double c_best, double c_next) {
  const double denom = 2.0 * (c_prev - 2.0 * c_best + c_next);
  if (!(denom > 0.0)) return 0.0;
  const double offset = (c_prev - c_next) / denom;
  constexpr double kLimit = 0.5 - 1e-6;
  return std::clamp(offset, -kLimit, kLimit);
}

DisparityMap subpixel_refine(const CostVolume& vol, const DisparityMap& map) {
  if (!map.same_shape(vol)) throw DimensionError("disparity map and cost volume differ in size");
  DisparityMap out = map;
  const int nd = vol.num_disparities();
  parallel_for(0, vol.height(), [&](int y) {
    for (int x = 0; x < vol.width(); ++x) {
      if (!map.is_valid(x, y)) continue;
      const int d = static_cast<int>(std::lround(map(x, y)));
      if (d <= 0 || d >= nd - 1) continue;
      const auto c = vol.costs(x, y);
      out(x, y) = static_cast<float>(d + parabola_offset(c[d - 1], c[d], c[d + 1]));
    }
  });
  return out;
}

DisparityMap finish_disparity(const CostVolume& accumulated, const PipelineConfig& cfg) {
  const CostVolume aggregated = sgm_aggregate(accumulated, cfg.effective_p1(), cfg.effective_p2());
  DisparityMap map = select_wta(aggregated);
  if (cfg.uniqueness) map = uniqueness_filter(aggregated, map, cfg.uniqueness_ratio);
  return subpixel_refine(aggregated, map);
}

DisparityMap binocular_pipeline(const GrayImage& left, const GrayImage& right,
                                const PipelineConfig& cfg) {
  cfg.validate();
  if (!left.same_shape(right)) throw DimensionError("left and right images differ in size");
  const CostPyramid pyr = build_cost_pyramid(right, left, cfg, MatchDirection::Leftward);
  return finish_disparity(accumulate_hierarchy(pyr), cfg);
}

}  // namespace mvs
