#pragma once

#include <functional>

#include "mvstereo/image.hpp"

namespace mvs {

/// Per-pixel reliability of the horizontal and vertical camera pairs;
/// horiz + vert == 1 everywhere.
struct WeightField {
  DoubleImage horiz;
  DoubleImage vert;
};

/// w_h = (|H| + eps/2) / (|H| + |V| + eps), w_v = 1 - w_h. Strong horizontal
/// gradients (vertical structure) favour the horizontal pair.
WeightField gradient_weights(const GradientPair& grad, double epsilon);

/// fused = 2 * (w_h * vol_h + w_v * vol_v).
CostVolume fuse_volumes(const CostVolume& vol_h, const CostVolume& vol_v, const WeightField& w);

/// Resamples a volume's disparity axis: out(d) = vol(d * ratio), linearly
/// interpolated and clamped to the last bin. Maps a vertical pair with a
/// different baseline onto the horizontal pair's disparity axis.
CostVolume rescale_disparity_axis(const CostVolume& vol, double ratio, int num_disparities);

using WeightFunction = std::function<WeightField(const GradientPair&)>;

/// Right image is the base; left is the horizontal match, top the vertical.
/// Both pairs go through the hierarchical census stage, are fused with the
/// weight function (gradient_weights with cfg.weight_epsilon by default),
/// and then share the SGM/WTA/uniqueness/subpixel back-end.
DisparityMap trinocular_pipeline(const GrayImage& right, const GrayImage& left,
                                 const GrayImage& top, const PipelineConfig& cfg,
                                 const WeightFunction& weights = {});

}  // namespace mvs
