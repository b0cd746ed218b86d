#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mvstereo/image.hpp"

namespace mvs {

/// Per-pixel census bit strings of length (2r+1)^2 - 1, packed into 64-bit
/// words. Bit k is set iff the k-th window neighbour (row-major, centre
/// skipped) is strictly darker than the centre. Neighbours outside the image
/// contribute 0.
class CensusImage {
 public:
  CensusImage(int width, int height, int window_radius);

  int width() const { return width_; }
  int height() const { return height_; }
  int window_radius() const { return radius_; }
  int bit_length() const { return bits_; }
  int words_per_pixel() const { return words_; }

  std::span<std::uint64_t> words(int x, int y) {
    return {data_.data() + index(x, y), static_cast<std::size_t>(words_)};
  }
  std::span<const std::uint64_t> words(int x, int y) const {
    return {data_.data() + index(x, y), static_cast<std::size_t>(words_)};
  }
  bool bit(int x, int y, int k) const { return (words(x, y)[k / 64] >> (k % 64)) & 1u; }

  bool operator==(const CensusImage&) const = default;

 private:
  std::size_t index(int x, int y) const {
    return (static_cast<std::size_t>(y) * width_ + x) * words_;
  }

  int width_;
  int height_;
  int radius_;
  int bits_;
  int words_;
  std::vector<std::uint64_t> data_;
};

/// Where the match camera sits relative to the base camera. A scene point at
/// base pixel (x, y) appears at (x + d, y) in a left camera and at (x, y + d)
/// in a top camera.
enum class MatchDirection { Leftward, Upward };

CensusImage census_transform(const GrayImage& img, int window_radius);

/// Hamming distance between two pixels' bit strings.
int hamming(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

/// cost(x, y, d) = hamming(base(x, y), match(x + d, y)) for Leftward, or
/// match(x, y + d) for Upward; out-of-image candidates cost bit_length().
CostVolume hamming_cost_volume(const CensusImage& base, const CensusImage& match,
                               int num_disparities, MatchDirection direction);

}  // namespace mvs
