#include "mvstereo/hierarchy.hpp"

#include <algorithm>

#include "mvstereo/parallel.hpp"

namespace mvs {

CostPyramid build_cost_pyramid(const GrayImage& base, const GrayImage& match,
                               const PipelineConfig& cfg, MatchDirection direction) {
  if (!base.same_shape(match)) throw DimensionError("stereo pair images differ in size");
  if (cfg.max_scale < 1) throw ValidationError("max_scale must be >= 1");
  if (cfg.num_disparities < 1) throw ValidationError("num_disparities must be >= 1");

  CostPyramid pyr;
  GrayImage b = base;
  GrayImage m = match;
  int disparities = cfg.num_disparities;
  for (int s = 0; s < cfg.max_scale; ++s) {
    if (s > 0) {
      if (b.width() < 2 || b.height() < 2) {
        pyr.warnings.push_back("image too small for pyramid level " + std::to_string(s) +
                               "; using " + std::to_string(s) + " of " +
                               std::to_string(cfg.max_scale) + " levels");
        break;
      }
      b = downsample_half(b);
      m = downsample_half(m);
      disparities = (disparities + 1) / 2;
    }
    pyr.levels.push_back(hamming_cost_volume(census_transform(b, cfg.window_radius),
                                             census_transform(m, cfg.window_radius),
                                             disparities, direction));
  }
  return pyr;
}

CostVolume accumulate_hierarchy(const CostPyramid& pyr) {
  if (pyr.levels.empty()) throw ValidationError("cost pyramid has no levels");
  std::vector<CostVolume> acc = pyr.levels;
  for (int s = static_cast<int>(acc.size()) - 2; s >= 0; --s) {
    CostVolume& fine = acc[s];
    const CostVolume& coarse = acc[s + 1];
    const int last_d = coarse.num_disparities() - 1;
    parallel_for(0, fine.height(), [&](int y) {
      const int cy = std::min(y / 2, coarse.height() - 1);
      for (int x = 0; x < fine.width(); ++x) {
        const int cx = std::min(x / 2, coarse.width() - 1);
        auto costs = fine.costs(x, y);
        const auto coarse_costs = coarse.costs(cx, cy);
        for (int d = 0; d < fine.num_disparities(); ++d) {
          // coarse position d/2: one bin for even d, the two neighbours for odd d
          const int cd = std::min(d / 2, last_d);
          const int cd_next = std::min((d + 1) / 2, last_d);
          costs[d] += (coarse_costs[cd] + coarse_costs[cd_next]) / 2.0f;
        }
      }
    });
  }
  return std::move(acc.front());
}

}  // namespace mvs
