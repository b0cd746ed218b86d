#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mvstereo/image.hpp"
#include "mvstereo/wires.hpp"

namespace mvs {

/// Polarizer angle in degrees at each position of the 2x2 super-pixel,
/// indexed [row][col]. The default is [[0, 45], [135, 90]].
using MosaicLayout = std::array<std::array<int, 2>, 2>;
inline constexpr MosaicLayout kDefaultMosaicLayout{{{0, 45}, {135, 90}}};

/// Raw micropolarizer frame; both dimensions even.
class PolarMosaic {
 public:
  explicit PolarMosaic(GrayImage raw, MosaicLayout layout = kDefaultMosaicLayout);

  const GrayImage& raw() const { return raw_; }
  const MosaicLayout& layout() const { return layout_; }

 private:
  GrayImage raw_;
  MosaicLayout layout_;
};

/// Angle channels and polarization state at half mosaic resolution.
struct PolarChannels {
  GrayImage i0;
  GrayImage i45;
  GrayImage i90;
  GrayImage i135;
  DoubleImage dolp;  // [0, 1]
  DoubleImage aop;   // radians in [-pi/2, pi/2)
};

struct StokesPixel {
  double dolp;
  double aop;
};

/// S0 = (i0+i45+i90+i135)/2, S1 = i0-i90, S2 = i45-i135;
/// dolp = |(S1,S2)| / S0 (0 when S0 == 0, at most 1), aop = atan2(S2, S1)/2.
StokesPixel stokes_from_angles(double i0, double i45, double i90, double i135);

PolarChannels decode_mosaic(const PolarMosaic& m);

/// Nearest-neighbour resampling to another grid.
DoubleImage resample_nearest(const DoubleImage& src, int width, int height);

struct Plane {
  double a = 0.0;  // per x
  double b = 0.0;  // per y
  double c = 0.0;
  double at(double x, double y) const { return a * x + b * y + c; }
};

struct SpecularRegion {
  std::vector<Pixel> pixels;
  /// Low-DOLP pixels 8-adjacent to the region.
  std::vector<Pixel> ring;
  std::optional<Plane> plane;
};

/// 4-connected components of dolp >= threshold with at least min_area pixels.
std::vector<SpecularRegion> segment_specular(const DoubleImage& dolp, double dolp_threshold,
                                             int min_area);

/// Least-squares plane through (x, y, value) samples by normal equations on
/// centred coordinates. Empty when fewer than 3 samples or when the x-y
/// scatter matrix is singular or has condition number above 1e8.
std::optional<Plane> fit_plane(const std::vector<Pixel>& at, const std::vector<double>& values);

struct RegionFillReport {
  std::size_t region_index;
  bool filled;
  std::size_t ring_samples;
  std::string reason;
};

struct PlaneFillResult {
  DisparityMap map;
  std::vector<RegionFillReport> reports;
};

/// Replaces every region pixel with a plane fitted to the valid ring
/// disparities, clamped to [0, num_disparities - 1]. Regions without a
/// usable fit are left untouched and reported.
PlaneFillResult plane_fill(const DisparityMap& dense, std::vector<SpecularRegion>& regions);

}  // namespace mvs
