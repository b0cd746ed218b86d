#pragma once

#include <string>
#include <vector>

#include "mvstereo/census.hpp"
#include "mvstereo/image.hpp"

namespace mvs {

/// Census/Hamming cost volumes of one image pair at successive half scales.
/// Level s has floor(size / 2^s) pixels and ceil(num_disparities / 2^s)
/// disparities.
struct CostPyramid {
  std::vector<CostVolume> levels;
  /// Non-fatal notes, e.g. levels dropped because the image got too small.
  std::vector<std::string> warnings;
};

CostPyramid build_cost_pyramid(const GrayImage& base, const GrayImage& match,
                               const PipelineConfig& cfg, MatchDirection direction);

/// Coarse-to-fine: every level gains the mean of the coarse bins
/// floor(d/2) and ceil(d/2) of the already-accumulated next coarser level at
/// (x/2, y/2), i.e. the coarse cost linearly interpolated at d/2. Returns the
/// accumulated full-resolution volume.
CostVolume accumulate_hierarchy(const CostPyramid& pyr);

}  // namespace mvs
