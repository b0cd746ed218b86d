#pragma once

#include <span>

#include "mvstereo/image.hpp"

namespace mvs {

/// Per-pixel integer argmin; ties go to the smaller disparity.
DisparityMap select_wta(const CostVolume& vol);

/// Index of the minimum cost, smallest index on ties.
int argmin_cost(std::span<const float> costs);

/// True when best >= (1 - ratio) * (lowest cost with |d - best_d| > 1).
bool is_ambiguous(std::span<const float> costs, int best_d, double ratio);

/// Invalidates pixels whose best cost is not clearly below the best
/// non-adjacent alternative. Never re-validates a pixel.
DisparityMap uniqueness_filter(const CostVolume& vol, const DisparityMap& map, double ratio);

/// Parabola vertex offset through (d-1, d, d+1), clamped inside (-0.5, 0.5).
/// Returns 0 for a non-convex or flat triple.
double parabola_offset(double c_prev, double c_best, double c_next);

/// Adds the parabola offset to every valid interior integer disparity.
DisparityMap subpixel_refine(const CostVolume& vol, const DisparityMap& map);

/// SGM -> WTA -> uniqueness (if enabled) -> subpixel on an accumulated volume.
DisparityMap finish_disparity(const CostVolume& accumulated, const PipelineConfig& cfg);

/// Hierarchical census + SGM disparity with the right image as base.
DisparityMap binocular_pipeline(const GrayImage& left, const GrayImage& right,
                                const PipelineConfig& cfg);

}  // namespace mvs
