#pragma once

// Randomised library-versus-oracle comparisons on small instances
// (at most 16x16 pixels and 8 disparities). Integer paths must match
// exactly; floating-point paths within a relative error of 1e-9.

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "mvstereo/census.hpp"
#include "mvstereo/disparity.hpp"
#include "mvstereo/hierarchy.hpp"
#include "mvstereo/polar.hpp"
#include "mvstereo/sgm.hpp"
#include "mvstereo/wires.hpp"
#include "oracles/oracles.hpp"

namespace oracle {

inline constexpr double kFloatTolerance = 1e-9;

struct FamilyResult {
  std::string name;
  int instances = 0;
  long long comparisons = 0;
  long long mismatches = 0;
  double max_rel_err = 0.0;
  bool exact = true;

  bool passed() const {
    return instances > 0 && mismatches == 0 && (exact || max_rel_err <= kFloatTolerance);
  }
  void exact_check(bool equal) {
    ++comparisons;
    if (!equal) ++mismatches;
  }
  void float_check(double got, double want) {
    ++comparisons;
    const double e = rel_err(got, want);
    max_rel_err = std::max(max_rel_err, e);
    if (!(e <= kFloatTolerance)) ++mismatches;
  }
};

inline mvs::GrayImage random_image(std::mt19937_64& rng, int w, int h, int levels = 256) {
  std::uniform_int_distribution<int> v(0, levels - 1);
  mvs::GrayImage img(w, h);
  for (auto& p : img.data()) p = static_cast<std::uint8_t>(v(rng));
  return img;
}

inline int rand_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline mvs::CostVolume random_volume(std::mt19937_64& rng, int w, int h, int nd, int max_cost) {
  mvs::CostVolume v(w, h, nd);
  for (auto& c : v.data()) c = static_cast<float>(rand_int(rng, 0, max_cost));
  return v;
}

inline FamilyResult census_family(std::uint64_t seed, int n) {
  FamilyResult r{"census transform"};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < n; ++i, ++r.instances) {
    // few intensity levels so ties are common
    const auto img = random_image(rng, rand_int(rng, 1, 16), rand_int(rng, 1, 16), rand_int(rng, 2, 256));
    const int radius = rand_int(rng, 1, 3);
    const auto c = mvs::census_transform(img, radius);
    for (int y = 0; y < img.height(); ++y) {
      for (int x = 0; x < img.width(); ++x) {
        const Bits want = census_at(img, x, y, radius);
        for (std::size_t k = 0; k < want.size(); ++k) r.exact_check(c.bit(x, y, static_cast<int>(k)) == want[k]);
      }
    }
  }
  return r;
}

inline FamilyResult hamming_family(std::uint64_t seed, int n) {
  FamilyResult r{"Hamming cost volume"};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < n; ++i, ++r.instances) {
    const int w = rand_int(rng, 1, 16);
    const int h = rand_int(rng, 1, 16);
    const int levels = rand_int(rng, 2, 256);
    const auto base = random_image(rng, w, h, levels);
    const auto match = random_image(rng, w, h, levels);
    const int radius = rand_int(rng, 1, 3);
    const int nd = rand_int(rng, 1, 8);
    const bool vertical = i % 2 == 1;
    const auto vol = mvs::hamming_cost_volume(mvs::census_transform(base, radius), mvs::census_transform(match, radius),
                                              nd, vertical ? mvs::MatchDirection::Upward : mvs::MatchDirection::Leftward);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        for (int d = 0; d < nd; ++d) r.exact_check(vol(x, y, d) == hamming_cost(base, match, x, y, d, radius, vertical));
  }
  return r;
}

inline FamilyResult hierarchy_family(std::uint64_t seed, int n) {
  FamilyResult r{"hierarchical accumulation"};
  r.exact = false;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < n; ++i, ++r.instances) {
    int w = rand_int(rng, 4, 16);
    int h = rand_int(rng, 4, 16);
    int nd = rand_int(rng, 2, 8);
    const int levels = rand_int(rng, 1, 3);
    mvs::CostPyramid pyr;
    Pyramid ref;
    for (int s = 0; s < levels; ++s) {
      pyr.levels.push_back(random_volume(rng, w, h, nd, 48));
      ref.push_back(to_volume(pyr.levels.back()));
      w /= 2;
      h /= 2;
      nd = (nd + 1) / 2;
    }
    const auto got = mvs::accumulate_hierarchy(pyr);
    const Volume want = accumulate(ref);
    for (int y = 0; y < got.height(); ++y)
      for (int x = 0; x < got.width(); ++x)
        for (int d = 0; d < got.num_disparities(); ++d) r.float_check(got(x, y, d), want[y][x][d]);
  }
  return r;
}

inline FamilyResult sgm_family(std::uint64_t seed, int n) {
  FamilyResult r{"semi-global aggregation"};
  r.exact = false;
  std::mt19937_64 rng(seed);
  const std::vector<std::pair<int, int>> dirs = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1}};
  for (int i = 0; i < n; ++i, ++r.instances) {
    const int w = rand_int(rng, 1, 12);
    const int h = rand_int(rng, 1, 12);
    const int nd = rand_int(rng, 1, 8);
    const auto vol = random_volume(rng, w, h, nd, 48);
    const double p1 = rand_int(rng, 0, 20);
    const double p2 = p1 + rand_int(rng, 0, 100);
    const auto got = mvs::sgm_aggregate(vol, p1, p2);
    const Volume want = sgm(to_volume(vol), dirs, p1, p2);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        for (int d = 0; d < nd; ++d) r.float_check(got(x, y, d), want[y][x][d]);
  }
  return r;
}

inline FamilyResult wta_family(std::uint64_t seed, int n) {
  FamilyResult r{"winner-take-all"};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < n; ++i, ++r.instances) {
    const auto vol = random_volume(rng, rand_int(rng, 1, 16), rand_int(rng, 1, 16), rand_int(rng, 1, 8),
                                   rand_int(rng, 1, 10));
    const auto map = mvs::select_wta(vol);
    for (int y = 0; y < vol.height(); ++y) {
      for (int x = 0; x < vol.width(); ++x) {
        std::vector<double> c(vol.costs(x, y).begin(), vol.costs(x, y).end());
        r.exact_check(map(x, y) == static_cast<float>(argmin(c)));
      }
    }
  }
  return r;
}

inline FamilyResult subpixel_family(std::uint64_t seed, int n) {
  FamilyResult r{"subpixel parabola vertex"};
  r.exact = false;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (int i = 0; i < n; ++i, ++r.instances) {
    // convex triple with its minimum in the middle
    const double b = u(rng);
    const double a = b + u(rng) + 1e-3;
    const double c = b + u(rng) + 1e-3;
    r.float_check(mvs::parabola_offset(a, b, c), vertex(a, b, c));
  }
  return r;
}

inline FamilyResult wire_cost_family(std::uint64_t seed, int n) {
  FamilyResult r{"wire match costs"};
  r.exact = false;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < n; ++i, ++r.instances) {
    const int w = rand_int(rng, 2, 16);
    const int h = rand_int(rng, 2, 16);
    const auto right = random_image(rng, w, h);
    const auto left = random_image(rng, w, h);
    const auto top = random_image(rng, w, h);
    const auto gr = mvs::compute_gradients(right);
    const auto gl = mvs::compute_gradients(left);
    const auto gt = mvs::compute_gradients(top);
    for (int k = 0; k < 32; ++k) {
      const int x = rand_int(rng, 0, w - 1);
      const int y = rand_int(rng, 0, h - 1);
      const int dh = rand_int(rng, 0, w - 1 - x);
      const int dv = rand_int(rng, 0, h - 1 - y);
      r.float_check(mvs::wire_match_cost_h(x, y, dh, right, left, gr, gl), wire_cost(right, left, x, y, dh, false));
      r.float_check(mvs::wire_match_cost_v(x, y, dv, right, top, gr, gt), wire_cost(right, top, x, y, dv, true));
    }
  }
  return r;
}

inline double angle_diff(double a, double b) {
  // AoP is defined modulo pi
  double d = std::fmod(a - b, std::numbers::pi);
  if (d > std::numbers::pi / 2) d -= std::numbers::pi;
  if (d < -std::numbers::pi / 2) d += std::numbers::pi;
  return d;
}

inline FamilyResult stokes_family(std::uint64_t seed, int n) {
  FamilyResult r{"Stokes DoLP/AoP"};
  r.exact = false;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < n; ++i, ++r.instances) {
    const int w = 2 * rand_int(rng, 1, 8);
    const int h = 2 * rand_int(rng, 1, 8);
    const auto raw = random_image(rng, w, h);
    const auto ch = mvs::decode_mosaic(mvs::PolarMosaic(raw));
    for (int y = 0; y < h / 2; ++y) {
      for (int x = 0; x < w / 2; ++x) {
        const double i0 = raw(2 * x, 2 * y), i45 = raw(2 * x + 1, 2 * y);
        const double i135 = raw(2 * x, 2 * y + 1), i90 = raw(2 * x + 1, 2 * y + 1);
        r.exact_check(ch.i0(x, y) == i0 && ch.i45(x, y) == i45 && ch.i90(x, y) == i90 && ch.i135(x, y) == i135);
        const Polarization want = stokes(i0, i45, i90, i135);
        r.float_check(ch.dolp(x, y), want.dolp);
        if (i0 != i90 || i45 != i135) r.float_check(angle_diff(ch.aop(x, y), want.aop), 0.0);
        r.exact_check(ch.aop(x, y) >= -std::numbers::pi / 2 && ch.aop(x, y) < std::numbers::pi / 2);
      }
    }
  }
  return r;
}

inline FamilyResult plane_family(std::uint64_t seed, int n) {
  FamilyResult r{"least-squares plane fit"};
  r.exact = false;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 0.5);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int i = 0; i < n; ++i, ++r.instances) {
    const int count = rand_int(rng, 3, 60);
    const double a = coef(rng), b = coef(rng), c = 10.0 * coef(rng) + 10.0;
    std::vector<mvs::Pixel> at;
    std::vector<double> xs, ys, vs;
    const bool collinear = i % 10 == 9;
    for (int k = 0; k < count; ++k) {
      const int x = rand_int(rng, 0, 15);
      const int y = collinear ? 7 : rand_int(rng, 0, 15);
      at.push_back({x, y});
      xs.push_back(x);
      ys.push_back(y);
      vs.push_back(a * x + b * y + c + noise(rng));
    }
    const auto got = mvs::fit_plane(at, vs);
    const auto want = plane(xs, ys, vs);
    r.exact_check(got.has_value() == want.has_value());
    if (got && want) {
      r.float_check(got->a, want->a);
      r.float_check(got->b, want->b);
      r.float_check(got->c, want->c);
    }
  }
  return r;
}

inline std::vector<FamilyResult> all_families(std::uint64_t seed, int instances) {
  return {census_family(seed + 1, instances),   hamming_family(seed + 2, instances),
          hierarchy_family(seed + 3, instances), sgm_family(seed + 4, instances),
          wta_family(seed + 5, instances),       subpixel_family(seed + 6, instances),
          wire_cost_family(seed + 7, instances), stokes_family(seed + 8, instances),
          plane_family(seed + 9, instances)};
}

}  // namespace oracle
