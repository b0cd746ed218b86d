#pragma once

#include <optional>
#include <vector>

#include "mvstereo/image.hpp"

namespace mvs {

/// Externally produced per-pixel wire probability in [0, 1].
class WireProbabilityMap {
 public:
  explicit WireProbabilityMap(DoubleImage prob);
  /// prob = value / 255.
  static WireProbabilityMap from_gray(const GrayImage& img);

  int width() const { return prob_.width(); }
  int height() const { return prob_.height(); }
  double operator()(int x, int y) const { return prob_(x, y); }
  const DoubleImage& raster() const { return prob_; }

 private:
  DoubleImage prob_;
};

struct Pixel {
  int x;
  int y;
  bool operator==(const Pixel&) const = default;
  auto operator<=>(const Pixel&) const = default;
};

/// Ordered 8-connected edge path, starting at an endpoint when it has one.
struct EdgeChain {
  std::vector<Pixel> pixels;
};

struct WireDisparity {
  int x;
  int y;
  float disparity;
};

/// At most one entry per pixel.
struct WireDisparitySet {
  std::vector<WireDisparity> entries;
};

/// Keeps edge pixels inside the thresholded (prob >= threshold) mask after
/// dilating it by `dilation` pixels (square structuring element), links the
/// survivors into 8-connected chains and drops chains shorter than
/// `min_length`.
std::vector<EdgeChain> wire_edge_pixels(const BinaryMask& edges, const WireProbabilityMap& wires,
                                        double threshold, int dilation = 2, int min_length = 5);

/// Returned for candidates that fall outside the match image; larger than
/// any in-bounds cost.
inline constexpr double kWireCostOutOfBounds = (255.0 + 510.0) * 255.0 + 1.0;

/// (|I_r(x,y) - I_l(x+d,y)| + |H_r(x,y) - H_l(x+d,y)|) * |H_r(x,y)|
double wire_match_cost_h(int x, int y, int d, const GrayImage& right, const GrayImage& left,
                         const GradientPair& grad_r, const GradientPair& grad_l);

/// (|I_r(x,y) - I_t(x,y+d)| + |V_r(x,y) - V_t(x,y+d)|) * |V_r(x,y)|
double wire_match_cost_v(int x, int y, int d, const GrayImage& right, const GrayImage& top,
                         const GradientPair& grad_r, const GradientPair& grad_t);

struct EdgeSgmParams {
  double p1 = 7.0;
  double p2 = 86.0;
  /// Disabled when unset.
  std::optional<double> uniqueness_ratio;
};

/// `costs[i]` holds the per-disparity costs of the chain's i-th pixel. The
/// 1-D SGM recurrence runs from both chain ends; the two passes are summed,
/// then WTA, uniqueness and subpixel refinement apply per pixel. Returns
/// DisparityMap::kInvalid where a pixel was rejected.
std::vector<float> edge_sgm(const std::vector<std::vector<double>>& costs, const EdgeSgmParams& params);

/// Wire entries overwrite the dense map; out-of-range entries are ignored.
DisparityMap merge_wire_disparities(const DisparityMap& dense, const WireDisparitySet& wires);

struct WireResult {
  std::vector<EdgeChain> chains;
  WireDisparitySet disparities;
};

/// Canny on the base (right) image, intersection with the wire mask, and
/// edge-SGM over the summed horizontal and vertical wire costs. Pixels
/// whose gradient weight is zero in both pairs emit nothing.
WireResult semantic_wire_disparities(const GrayImage& right, const GrayImage& left,
                                     const GrayImage& top, const WireProbabilityMap& wires,
                                     const PipelineConfig& cfg);

}  // namespace mvs
