#pragma once

#include "mvstereo/image.hpp"

namespace mvs {

/// Canny edge detector: 5-tap Gaussian (sigma 1), Sobel gradients,
/// non-maximum suppression and 8-connected double-threshold hysteresis.
/// Thresholds apply to the L2 Sobel magnitude. Returns a 0/1 mask.
BinaryMask canny_edges(const GrayImage& img, double low, double high);

}  // namespace mvs
