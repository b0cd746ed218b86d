#include "mvstereo/polar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

namespace mvs {

PolarMosaic::PolarMosaic(GrayImage raw, MosaicLayout layout) : raw_(std::move(raw)), layout_(layout) {
  if (raw_.width() % 2 != 0 || raw_.height() % 2 != 0) {
    throw DimensionError("polarization mosaic needs even dimensions, got " +
                         std::to_string(raw_.width()) + "x" + std::to_string(raw_.height()));
  }
  std::array<int, 4> angles{layout_[0][0], layout_[0][1], layout_[1][0], layout_[1][1]};
  std::ranges::sort(angles);
  if (angles != std::array<int, 4>{0, 45, 90, 135}) {
    throw ValidationError("mosaic layout must hold each of 0, 45, 90, 135 exactly once");
  }
}

StokesPixel stokes_from_angles(double i0, double i45, double i90, double i135) {
  const double s0 = (i0 + i45 + i90 + i135) / 2.0;
  const double s1 = i0 - i90;
  const double s2 = i45 - i135;
  StokesPixel out{0.0, 0.0};
  if (s0 > 0.0) out.dolp = std::min(1.0, std::sqrt(s1 * s1 + s2 * s2) / s0);
  out.aop = 0.5 * std::atan2(s2, s1);
  if (out.aop >= std::numbers::pi / 2) out.aop -= std::numbers::pi;
  return out;
}

PolarChannels decode_mosaic(const PolarMosaic& m) {
  const int w = m.raw().width() / 2;
  const int h = m.raw().height() / 2;
  PolarChannels ch{GrayImage(w, h), GrayImage(w, h), GrayImage(w, h), GrayImage(w, h),
                   DoubleImage(w, h), DoubleImage(w, h)};
  auto channel_for = [&](int angle) -> GrayImage& {
    switch (angle) {
      case 0: return ch.i0;
      case 45: return ch.i45;
      case 90: return ch.i90;
      default: return ch.i135;
    }
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) channel_for(m.layout()[r][c])(x, y) = m.raw()(2 * x + c, 2 * y + r);
      }
      const StokesPixel s = stokes_from_angles(ch.i0(x, y), ch.i45(x, y), ch.i90(x, y), ch.i135(x, y));
      ch.dolp(x, y) = s.dolp;
      ch.aop(x, y) = s.aop;
    }
  }
  return ch;
}

DoubleImage resample_nearest(const DoubleImage& src, int width, int height) {
  DoubleImage out(width, height);
  for (int y = 0; y < height; ++y) {
    const int sy = std::min(src.height() - 1, static_cast<int>((y + 0.5) * src.height() / height));
    for (int x = 0; x < width; ++x) {
      const int sx = std::min(src.width() - 1, static_cast<int>((x + 0.5) * src.width() / width));
      out(x, y) = src(sx, sy);
    }
  }
  return out;
}

std::vector<SpecularRegion> segment_specular(const DoubleImage& dolp, double dolp_threshold, int min_area) {
  if (!(dolp_threshold > 0.0 && dolp_threshold < 1.0)) {
    throw ValidationError("dolp threshold must lie in (0,1)");
  }
  const int w = dolp.width();
  const int h = dolp.height();
  auto high = [&](int x, int y) { return dolp(x, y) >= dolp_threshold; };

  std::vector<SpecularRegion> regions;
  Raster<int> label(w, h, -1);
  Raster<int> ring_owner(w, h, -1);
  std::vector<Pixel> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!high(x, y) || label(x, y) >= 0) continue;
      SpecularRegion region;
      const int id = static_cast<int>(regions.size());
      label(x, y) = id;
      stack.push_back({x, y});
      while (!stack.empty()) {
        const Pixel p = stack.back();
        stack.pop_back();
        region.pixels.push_back(p);
        constexpr std::array<Pixel, 4> k4{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
        for (const Pixel o : k4) {
          const int nx = p.x + o.x;
          const int ny = p.y + o.y;
          if (dolp.contains(nx, ny) && high(nx, ny) && label(nx, ny) < 0) {
            label(nx, ny) = id;
            stack.push_back({nx, ny});
          }
        }
      }
      if (static_cast<int>(region.pixels.size()) < min_area) {
        // Keep the label so the component is not revisited; use a slot that
        // never reaches the output.
        regions.push_back({});
        continue;
      }
      std::ranges::sort(region.pixels, [](Pixel a, Pixel b) { return std::tie(a.y, a.x) < std::tie(b.y, b.x); });
      for (const Pixel p : region.pixels) {
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = p.x + dx;
            const int ny = p.y + dy;
            if (!dolp.contains(nx, ny) || high(nx, ny) || ring_owner(nx, ny) == id) continue;
            ring_owner(nx, ny) = id;
            region.ring.push_back({nx, ny});
          }
        }
      }
      std::ranges::sort(region.ring, [](Pixel a, Pixel b) { return std::tie(a.y, a.x) < std::tie(b.y, b.x); });
      regions.push_back(std::move(region));
    }
  }
  std::erase_if(regions, [](const SpecularRegion& r) { return r.pixels.empty(); });
  return regions;
}

std::optional<Plane> fit_plane(const std::vector<Pixel>& at, const std::vector<double>& values) {
  if (at.size() != values.size()) throw DimensionError("plane fit sample lists differ in length");
  const std::size_t n = at.size();
  if (n < 3) return std::nullopt;

  double mx = 0.0, my = 0.0, mv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += at[i].x;
    my += at[i].y;
    mv += values[i];
  }
  mx /= n;
  my /= n;
  mv /= n;

  double sxx = 0.0, sxy = 0.0, syy = 0.0, sxv = 0.0, syv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = at[i].x - mx;
    const double dy = at[i].y - my;
    const double dv = values[i] - mv;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
    sxv += dx * dv;
    syv += dy * dv;
  }

  // Eigenvalues of the symmetric 2x2 scatter matrix.
  const double mean = 0.5 * (sxx + syy);
  const double spread = std::hypot(0.5 * (sxx - syy), sxy);
  const double lmax = mean + spread;
  const double lmin = mean - spread;
  if (!(lmin > 0.0) || lmax / lmin > 1e8) return std::nullopt;

  const double det = sxx * syy - sxy * sxy;
  Plane p;
  p.a = (syy * sxv - sxy * syv) / det;
  p.b = (sxx * syv - sxy * sxv) / det;
  p.c = mv - p.a * mx - p.b * my;
  return p;
}

PlaneFillResult plane_fill(const DisparityMap& dense, std::vector<SpecularRegion>& regions) {
  PlaneFillResult result{dense, {}};
  const double max_d = dense.num_disparities() - 1;
  for (std::size_t r = 0; r < regions.size(); ++r) {
    SpecularRegion& region = regions[r];
    for (const Pixel p : region.pixels) {
      if (!dense.contains(p.x, p.y)) throw DimensionError("specular region lies outside the disparity map");
    }
    std::vector<Pixel> at;
    std::vector<double> values;
    for (const Pixel p : region.ring) {
      if (dense.contains(p.x, p.y) && dense.is_valid(p.x, p.y)) {
        at.push_back(p);
        values.push_back(dense(p.x, p.y));
      }
    }
    region.plane = fit_plane(at, values);
    if (!region.plane) {
      result.reports.push_back({r, false, at.size(),
                                at.size() < 3 ? "fewer than 3 valid ring disparities"
                                              : "ring samples are collinear or ill-conditioned"});
      continue;
    }
    for (const Pixel p : region.pixels) {
      const double v = std::clamp(region.plane->at(p.x, p.y), 0.0, max_d);
      result.map(p.x, p.y) = static_cast<float>(v);
    }
    result.reports.push_back({r, true, at.size(), {}});
  }
  return result;
}

}  // namespace mvs
