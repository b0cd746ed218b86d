#include "mvstereo/canny.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace mvs {
namespace {

FloatImage gaussian_blur(const GrayImage& img) {
  constexpr int kRadius = 2;
  std::array<float, 2 * kRadius + 1> kernel{};
  float sum = 0.0f;
  for (int i = -kRadius; i <= kRadius; ++i) {
    kernel[i + kRadius] = std::exp(-0.5f * static_cast<float>(i * i));
    sum += kernel[i + kRadius];
  }
  for (float& k : kernel) k /= sum;

  const int w = img.width();
  const int h = img.height();
  auto clampi = [](int v, int hi) { return std::clamp(v, 0, hi - 1); };
  FloatImage tmp(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      float acc = 0.0f;
      for (int i = -kRadius; i <= kRadius; ++i) acc += kernel[i + kRadius] * img(clampi(x + i, w), y);
      tmp(x, y) = acc;
    }
  }
  FloatImage out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      float acc = 0.0f;
      for (int i = -kRadius; i <= kRadius; ++i) acc += kernel[i + kRadius] * tmp(x, clampi(y + i, h));
      out(x, y) = acc;
    }
  }
  return out;
}

}  // namespace

BinaryMask canny_edges(const GrayImage& img, double low, double high) {
  if (!(low > 0.0) || !(low <= high)) throw ValidationError("Canny thresholds must satisfy 0 < low <= high");
  const int w = img.width();
  const int h = img.height();
  BinaryMask edges(w, h, 0);
  if (w < 3 || h < 3) return edges;

  const FloatImage s = gaussian_blur(img);
  FloatImage gx(w, h);
  FloatImage gy(w, h);
  FloatImage mag(w, h);
  for (int y = 1; y < h - 1; ++y) {
    for (int x = 1; x < w - 1; ++x) {
      gx(x, y) = (s(x + 1, y - 1) + 2 * s(x + 1, y) + s(x + 1, y + 1)) -
                 (s(x - 1, y - 1) + 2 * s(x - 1, y) + s(x - 1, y + 1));
      gy(x, y) = (s(x - 1, y + 1) + 2 * s(x, y + 1) + s(x + 1, y + 1)) -
                 (s(x - 1, y - 1) + 2 * s(x, y - 1) + s(x + 1, y - 1));
      mag(x, y) = std::hypot(gx(x, y), gy(x, y));
    }
  }

  // 0: strong, 1: weak candidate, 2: suppressed.
  Raster<std::uint8_t> state(w, h, 2);
  constexpr float kTan22 = 0.41421356f;  // tan(22.5 deg)
  for (int y = 1; y < h - 1; ++y) {
    for (int x = 1; x < w - 1; ++x) {
      const float m = mag(x, y);
      if (m < low) continue;
      const float ax = std::abs(gx(x, y));
      const float ay = std::abs(gy(x, y));
      int ox = 0;
      int oy = 0;
      if (ay <= ax * kTan22) {
        ox = 1;
      } else if (ax <= ay * kTan22) {
        oy = 1;
      } else {
        ox = 1;
        oy = (gx(x, y) > 0) == (gy(x, y) > 0) ? 1 : -1;
      }
      // Strict on one side only so a symmetric ridge keeps exactly one pixel.
      const float before = mag(x - ox, y - oy);
      const float after = mag(x + ox, y + oy);
      if (m > before && m >= after) state(x, y) = m >= high ? 0 : 1;
    }
  }

  std::vector<std::pair<int, int>> stack;
  for (int y = 1; y < h - 1; ++y) {
    for (int x = 1; x < w - 1; ++x) {
      if (state(x, y) == 0 && !edges(x, y)) {
        edges(x, y) = 1;
        stack.emplace_back(x, y);
        while (!stack.empty()) {
          const auto [cx, cy] = stack.back();
          stack.pop_back();
          for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
              const int nx = cx + dx;
              const int ny = cy + dy;
              if (!state.contains(nx, ny) || edges(nx, ny) || state(nx, ny) == 2) continue;
              edges(nx, ny) = 1;
              stack.emplace_back(nx, ny);
            }
          }
        }
      }
    }
  }
  return edges;
}

}  // namespace mvs
