#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mvstereo/errors.hpp"

namespace mvs {

/// Row-major single-channel raster. Coordinates are (x, y) = (column, row).
template <typename T>
class Raster {
 public:
  using value_type = T;

  Raster() = default;

  Raster(int width, int height, T fill = T{}) : width_(width), height_(height) {
    check_shape(width, height);
    data_.assign(static_cast<std::size_t>(width) * height, fill);
  }

  Raster(int width, int height, std::vector<T> data)
      : width_(width), height_(height), data_(std::move(data)) {
    check_shape(width, height);
    if (data_.size() != static_cast<std::size_t>(width) * height) {
      throw DimensionError("raster data length does not match width*height");
    }
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  bool contains(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }
  bool same_shape(const auto& other) const {
    return width_ == other.width() && height_ == other.height();
  }

  T& operator()(int x, int y) { return data_[index(x, y)]; }
  const T& operator()(int x, int y) const { return data_[index(x, y)]; }

  std::span<T> row(int y) {
    return {data_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)};
  }
  std::span<const T> row(int y) const {
    return {data_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)};
  }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }

  bool operator==(const Raster&) const = default;

 private:
  static void check_shape(int width, int height) {
    if (width < 1 || height < 1) {
      throw DimensionError("raster dimensions must be at least 1x1, got " +
                           std::to_string(width) + "x" + std::to_string(height));
    }
  }
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

/// 8-bit intensity image, the unit of all matching.
using GrayImage = Raster<std::uint8_t>;
using FloatImage = Raster<float>;
using DoubleImage = Raster<double>;
/// 0/1 per pixel.
using BinaryMask = Raster<std::uint8_t>;

/// Signed horizontal and vertical intensity gradients of one image.
struct GradientPair {
  FloatImage horiz;
  FloatImage vert;
};

/// Matching cost per (x, y, d). Disparity is the fastest-varying index.
class CostVolume {
 public:
  CostVolume() = default;
  CostVolume(int width, int height, int num_disparities, float fill = 0.0f);

  int width() const { return width_; }
  int height() const { return height_; }
  int num_disparities() const { return num_disparities_; }
  bool same_shape(const CostVolume& o) const {
    return width_ == o.width_ && height_ == o.height_ && num_disparities_ == o.num_disparities_;
  }

  float& operator()(int x, int y, int d) { return costs_[index(x, y) + d]; }
  float operator()(int x, int y, int d) const { return costs_[index(x, y) + d]; }

  /// All disparity costs of one pixel.
  std::span<float> costs(int x, int y) {
    return {costs_.data() + index(x, y), static_cast<std::size_t>(num_disparities_)};
  }
  std::span<const float> costs(int x, int y) const {
    return {costs_.data() + index(x, y), static_cast<std::size_t>(num_disparities_)};
  }

  std::span<float> data() { return costs_; }
  std::span<const float> data() const { return costs_; }

  bool operator==(const CostVolume&) const = default;

 private:
  std::size_t index(int x, int y) const {
    return (static_cast<std::size_t>(y) * width_ + x) * num_disparities_;
  }

  int width_ = 0;
  int height_ = 0;
  int num_disparities_ = 0;
  std::vector<float> costs_;
};

/// Per-pixel subpixel disparity. Invalid pixels hold kInvalid.
class DisparityMap {
 public:
  static constexpr float kInvalid = -1.0f;

  DisparityMap() = default;
  DisparityMap(int width, int height, int num_disparities, float fill = kInvalid);

  int width() const { return values_.width(); }
  int height() const { return values_.height(); }
  int num_disparities() const { return num_disparities_; }
  bool same_shape(const auto& o) const { return values_.same_shape(o); }
  bool contains(int x, int y) const { return values_.contains(x, y); }

  float& operator()(int x, int y) { return values_(x, y); }
  float operator()(int x, int y) const { return values_(x, y); }
  bool is_valid(int x, int y) const { return values_(x, y) >= 0.0f; }
  void invalidate(int x, int y) { values_(x, y) = kInvalid; }

  const FloatImage& values() const { return values_; }
  FloatImage& values() { return values_; }

  std::size_t valid_count() const;

  bool operator==(const DisparityMap&) const = default;

 private:
  FloatImage values_;
  int num_disparities_ = 0;
};

/// Every numeric knob of the dense, wire, and polarization stages.
struct PipelineConfig {
  int window_radius = 3;
  int num_disparities = 64;
  /// Pyramid levels: full, half, quarter, ...
  int max_scale = 3;
  /// SGM penalties at the 48-bit (7x7) census reference scale. The values
  /// actually applied are scaled by census_bits / 48, see effective_p1().
  double sgm_p1 = 7.0;
  double sgm_p2 = 86.0;
  bool uniqueness = true;
  double uniqueness_ratio = 0.15;

  double weight_epsilon = 1.0;
  /// Vertical over horizontal baseline length.
  double baseline_ratio = 1.0;

  double wire_prob_threshold = 0.5;
  int wire_mask_dilation = 2;
  int min_chain_length = 5;
  double canny_low = 20.0;
  double canny_high = 60.0;

  double dolp_threshold = 0.3;
  int min_specular_area = 50;

  int census_bits() const { return (2 * window_radius + 1) * (2 * window_radius + 1) - 1; }
  double effective_p1() const { return sgm_p1 * census_bits() / 48.0; }
  double effective_p2() const { return sgm_p2 * census_bits() / 48.0; }

  /// Throws ValidationError on the first violated constraint.
  void validate() const;
};

/// Central differences in the interior, one-sided differences on the border.
GradientPair compute_gradients(const GrayImage& img);

/// 2x2 block mean rounded to nearest (halves up); odd trailing row/column dropped.
GrayImage downsample_half(const GrayImage& img);

}  // namespace mvs
