#include "mvstereo/image.hpp"

#include <algorithm>
#include <cmath>

namespace mvs {

CostVolume::CostVolume(int width, int height, int num_disparities, float fill)
    : width_(width), height_(height), num_disparities_(num_disparities) {
  if (width < 1 || height < 1 || num_disparities < 1) {
    throw DimensionError("cost volume dimensions must be positive");
  }
  costs_.assign(static_cast<std::size_t>(width) * height * num_disparities, fill);
}

DisparityMap::DisparityMap(int width, int height, int num_disparities, float fill)
    : values_(width, height, fill), num_disparities_(num_disparities) {
  if (num_disparities < 1) {
    throw DimensionError("disparity map needs at least one disparity");
  }
}

std::size_t DisparityMap::valid_count() const {
  return static_cast<std::size_t>(
      std::count_if(values_.data().begin(), values_.data().end(), [](float v) { return v >= 0.0f; }));
}

void PipelineConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ValidationError(msg); };
  if (window_radius < 1) fail("window_radius must be >= 1");
  if (num_disparities < 2) fail("num_disparities must be >= 2");
  if (max_scale < 1) fail("max_scale must be >= 1");
  if (!(sgm_p1 > 0.0) || !(sgm_p1 <= sgm_p2)) fail("SGM penalties must satisfy 0 < p1 <= p2");
  if (!(uniqueness_ratio > 0.0 && uniqueness_ratio < 1.0)) fail("uniqueness_ratio must lie in (0,1)");
  if (!(dolp_threshold > 0.0 && dolp_threshold < 1.0)) fail("dolp_threshold must lie in (0,1)");
  if (!(wire_prob_threshold > 0.0 && wire_prob_threshold < 1.0)) {
    fail("wire_prob_threshold must lie in (0,1)");
  }
  if (!(weight_epsilon > 0.0)) fail("weight_epsilon must be > 0");
  if (!(baseline_ratio > 0.0)) fail("baseline_ratio must be > 0");
  if (wire_mask_dilation < 0) fail("wire_mask_dilation must be >= 0");
  if (min_chain_length < 1) fail("min_chain_length must be >= 1");
  if (!(canny_low > 0.0 && canny_low <= canny_high)) fail("Canny thresholds must satisfy 0 < low <= high");
  if (min_specular_area < 1) fail("min_specular_area must be >= 1");
}

namespace {

// d/dt along one line of n samples.
float line_derivative(int i, int n, auto&& sample) {
  if (n == 1) return 0.0f;
  if (i == 0) return static_cast<float>(sample(1)) - static_cast<float>(sample(0));
  if (i == n - 1) return static_cast<float>(sample(n - 1)) - static_cast<float>(sample(n - 2));
  return 0.5f * (static_cast<float>(sample(i + 1)) - static_cast<float>(sample(i - 1)));
}

}  // namespace

GradientPair compute_gradients(const GrayImage& img) {
  const int w = img.width();
  const int h = img.height();
  GradientPair g{FloatImage(w, h), FloatImage(w, h)};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      g.horiz(x, y) = line_derivative(x, w, [&](int i) { return img(i, y); });
      g.vert(x, y) = line_derivative(y, h, [&](int i) { return img(x, i); });
    }
  }
  return g;
}

GrayImage downsample_half(const GrayImage& img) {
  if (img.width() < 2 || img.height() < 2) {
    throw DimensionError("downsample_half needs at least a 2x2 image, got " +
                         std::to_string(img.width()) + "x" + std::to_string(img.height()));
  }
  GrayImage out(img.width() / 2, img.height() / 2);
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      const int sum = img(2 * x, 2 * y) + img(2 * x + 1, 2 * y) + img(2 * x, 2 * y + 1) +
                      img(2 * x + 1, 2 * y + 1);
      out(x, y) = static_cast<std::uint8_t>((sum + 2) / 4);
    }
  }
  return out;
}

}  // namespace mvs
