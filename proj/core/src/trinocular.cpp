#include "mvstereo/trinocular.hpp"

#include <algorithm>
#include <cmath>

#include "mvstereo/disparity.hpp"
#include "mvstereo/hierarchy.hpp"
#include "mvstereo/parallel.hpp"

namespace mvs {

WeightField gradient_weights(const GradientPair& grad, double epsilon) {
  if (!(epsilon > 0.0)) throw ValidationError("weight epsilon must be > 0");
  if (!grad.horiz.same_shape(grad.vert)) throw DimensionError("gradient rasters differ in size");
  const int w = grad.horiz.width();
  const int h = grad.horiz.height();
  WeightField out{DoubleImage(w, h), DoubleImage(w, h)};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double gh = std::abs(static_cast<double>(grad.horiz(x, y)));
      const double gv = std::abs(static_cast<double>(grad.vert(x, y)));
      const double wh = (gh + epsilon / 2.0) / (gh + gv + epsilon);
      out.horiz(x, y) = wh;
      out.vert(x, y) = 1.0 - wh;
    }
  }
  return out;
}

CostVolume fuse_volumes(const CostVolume& vol_h, const CostVolume& vol_v, const WeightField& w) {
  if (!vol_h.same_shape(vol_v)) throw DimensionError("pair cost volumes differ in shape");
  if (w.horiz.width() != vol_h.width() || w.horiz.height() != vol_h.height() ||
      !w.horiz.same_shape(w.vert)) {
    throw DimensionError("weight field does not match cost volume");
  }
  CostVolume out(vol_h.width(), vol_h.height(), vol_h.num_disparities());
  parallel_for(0, out.height(), [&](int y) {
    for (int x = 0; x < out.width(); ++x) {
      const double wh = w.horiz(x, y);
      const double wv = w.vert(x, y);
      const auto ch = vol_h.costs(x, y);
      const auto cv = vol_v.costs(x, y);
      auto o = out.costs(x, y);
      for (int d = 0; d < out.num_disparities(); ++d) {
        o[d] = static_cast<float>(2.0 * (wh * ch[d] + wv * cv[d]));
      }
    }
  });
  return out;
}

CostVolume rescale_disparity_axis(const CostVolume& vol, double ratio, int num_disparities) {
  if (!(ratio > 0.0)) throw ValidationError("baseline ratio must be > 0");
  CostVolume out(vol.width(), vol.height(), num_disparities);
  const int last = vol.num_disparities() - 1;
  parallel_for(0, vol.height(), [&](int y) {
    for (int x = 0; x < vol.width(); ++x) {
      const auto c = vol.costs(x, y);
      auto o = out.costs(x, y);
      for (int d = 0; d < num_disparities; ++d) {
        const double pos = std::min(d * ratio, static_cast<double>(last));
        const int lo = static_cast<int>(std::floor(pos));
        const int hi = std::min(lo + 1, last);
        const double t = pos - lo;
        o[d] = static_cast<float>((1.0 - t) * c[lo] + t * c[hi]);
      }
    }
  });
  return out;
}

DisparityMap trinocular_pipeline(const GrayImage& right, const GrayImage& left,
                                 const GrayImage& top, const PipelineConfig& cfg,
                                 const WeightFunction& weights) {
  cfg.validate();
  if (!right.same_shape(left) || !right.same_shape(top)) {
    throw DimensionError("trinocular images differ in size");
  }

  const CostVolume vol_h =
      accumulate_hierarchy(build_cost_pyramid(right, left, cfg, MatchDirection::Leftward));

  CostVolume vol_v;
  if (cfg.baseline_ratio == 1.0) {
    vol_v = accumulate_hierarchy(build_cost_pyramid(right, top, cfg, MatchDirection::Upward));
  } else {
    PipelineConfig vcfg = cfg;
    vcfg.num_disparities =
        std::max(2, static_cast<int>(std::ceil((cfg.num_disparities - 1) * cfg.baseline_ratio)) + 1);
    vol_v = rescale_disparity_axis(
        accumulate_hierarchy(build_cost_pyramid(right, top, vcfg, MatchDirection::Upward)),
        cfg.baseline_ratio, cfg.num_disparities);
  }

  const GradientPair grad = compute_gradients(right);
  const WeightField w = weights ? weights(grad) : gradient_weights(grad, cfg.weight_epsilon);
  return finish_disparity(fuse_volumes(vol_h, vol_v, w), cfg);
}

}  // namespace mvs
