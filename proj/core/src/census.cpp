#include "mvstereo/census.hpp"

#include <bit>

#include "mvstereo/parallel.hpp"

namespace mvs {

CensusImage::CensusImage(int width, int height, int window_radius)
    : width_(width), height_(height), radius_(window_radius) {
  if (width < 1 || height < 1) throw DimensionError("census image dimensions must be positive");
  if (window_radius < 1) throw ValidationError("census window radius must be >= 1");
  const int side = 2 * window_radius + 1;
  bits_ = side * side - 1;
  words_ = (bits_ + 63) / 64;
  data_.assign(static_cast<std::size_t>(width) * height * words_, 0);
}

CensusImage census_transform(const GrayImage& img, int window_radius) {
  CensusImage out(img.width(), img.height(), window_radius);
  const int r = window_radius;
  parallel_for(0, img.height(), [&](int y) {
    for (int x = 0; x < img.width(); ++x) {
      const std::uint8_t centre = img(x, y);
      auto words = out.words(x, y);
      int k = 0;
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const int nx = x + dx;
          const int ny = y + dy;
          if (img.contains(nx, ny) && img(nx, ny) < centre) {
            words[k / 64] |= std::uint64_t{1} << (k % 64);
          }
          ++k;
        }
      }
    }
  });
  return out;
}

int hamming(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  int n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += std::popcount(a[i] ^ b[i]);
  return n;
}

CostVolume hamming_cost_volume(const CensusImage& base, const CensusImage& match,
                               int num_disparities, MatchDirection direction) {
  if (base.width() != match.width() || base.height() != match.height()) {
    throw DimensionError("census images differ in size");
  }
  if (base.window_radius() != match.window_radius()) {
    throw DimensionError("census images use different window radii");
  }
  if (num_disparities < 1) throw ValidationError("num_disparities must be >= 1");

  CostVolume vol(base.width(), base.height(), num_disparities);
  const float out_of_bounds = static_cast<float>(base.bit_length());
  parallel_for(0, base.height(), [&](int y) {
    for (int x = 0; x < base.width(); ++x) {
      const auto b = base.words(x, y);
      auto costs = vol.costs(x, y);
      for (int d = 0; d < num_disparities; ++d) {
        const int mx = direction == MatchDirection::Leftward ? x + d : x;
        const int my = direction == MatchDirection::Upward ? y + d : y;
        if (mx >= match.width() || my >= match.height()) {
          costs[d] = out_of_bounds;
        } else {
          costs[d] = static_cast<float>(hamming(b, match.words(mx, my)));
        }
      }
    }
  });
  return vol;
}

}  // namespace mvs
