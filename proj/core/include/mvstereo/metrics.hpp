#pragma once

#include "mvstereo/image.hpp"

namespace mvs {

/// Percentage of pixels with valid ground truth whose estimate is invalid or
/// off by more than `tol`. Throws ValidationError if no truth pixel is valid.
double bad_pixel_pct(const DisparityMap& est, const DisparityMap& truth, double tol = 2.0);

/// Same, restricted to pixels where `region` is nonzero.
double bad_pixel_pct_in(const DisparityMap& est, const DisparityMap& truth, const BinaryMask& region,
                        double tol = 2.0);

/// Percentage of wire pixels p for which some pixel q in the 3x3
/// neighbourhood of p has a valid estimate within `tol` of truth(p). Wire
/// pixels without valid truth count as misses. Throws ValidationError on an
/// empty mask.
double wire_detection_pct(const DisparityMap& est, const BinaryMask& wire_mask,
                          const DisparityMap& truth, double tol = 2.0);

}  // namespace mvs
