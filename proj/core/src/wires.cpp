#include "mvstereo/wires.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <tuple>

#include "mvstereo/canny.hpp"
#include "mvstereo/disparity.hpp"
#include "mvstereo/parallel.hpp"
#include "mvstereo/sgm.hpp"

namespace mvs {

WireProbabilityMap::WireProbabilityMap(DoubleImage prob) : prob_(std::move(prob)) {
  for (double p : prob_.data()) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("wire probability outside [0,1]");
  }
}

WireProbabilityMap WireProbabilityMap::from_gray(const GrayImage& img) {
  DoubleImage prob(img.width(), img.height());
  std::ranges::transform(img.data(), prob.data().begin(), [](std::uint8_t v) { return v / 255.0; });
  return WireProbabilityMap(std::move(prob));
}

namespace {

// 4-neighbours first so chains prefer straight steps.
constexpr std::array<Pixel, 8> kNeighbours{{{1, 0}, {0, 1}, {-1, 0}, {0, -1},
                                            {1, 1}, {-1, 1}, {-1, -1}, {1, -1}}};

BinaryMask threshold_and_dilate(const WireProbabilityMap& wires, double threshold, int dilation) {
  const int w = wires.width();
  const int h = wires.height();
  BinaryMask raw(w, h, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) raw(x, y) = wires(x, y) >= threshold ? 1 : 0;
  }
  if (dilation <= 0) return raw;
  // Separable square dilation.
  BinaryMask tmp(w, h, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int i = std::max(0, x - dilation); i <= std::min(w - 1, x + dilation); ++i) {
        if (raw(i, y)) {
          tmp(x, y) = 1;
          break;
        }
      }
    }
  }
  BinaryMask out(w, h, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int j = std::max(0, y - dilation); j <= std::min(h - 1, y + dilation); ++j) {
        if (tmp(x, j)) {
          out(x, y) = 1;
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace

std::vector<EdgeChain> wire_edge_pixels(const BinaryMask& edges, const WireProbabilityMap& wires,
                                        double threshold, int dilation, int min_length) {
  if (edges.width() != wires.width() || edges.height() != wires.height()) {
    throw DimensionError("edge raster and wire probability map differ in size");
  }
  const int w = edges.width();
  const int h = edges.height();
  const BinaryMask mask = threshold_and_dilate(wires, threshold, dilation);

  BinaryMask keep(w, h, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) keep(x, y) = (edges(x, y) && mask(x, y)) ? 1 : 0;
  }

  auto unvisited_degree = [&](Pixel p) {
    int n = 0;
    for (const Pixel o : kNeighbours) {
      const int nx = p.x + o.x;
      const int ny = p.y + o.y;
      if (keep.contains(nx, ny) && keep(nx, ny)) ++n;
    }
    return n;
  };

  std::vector<EdgeChain> chains;
  BinaryMask seen(w, h, 0);
  std::vector<Pixel> component;
  std::vector<Pixel> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!keep(x, y) || seen(x, y)) continue;
      component.clear();
      stack.push_back({x, y});
      seen(x, y) = 1;
      while (!stack.empty()) {
        const Pixel p = stack.back();
        stack.pop_back();
        component.push_back(p);
        for (const Pixel o : kNeighbours) {
          const int nx = p.x + o.x;
          const int ny = p.y + o.y;
          if (keep.contains(nx, ny) && keep(nx, ny) && !seen(nx, ny)) {
            seen(nx, ny) = 1;
            stack.push_back({nx, ny});
          }
        }
      }
      std::ranges::sort(component, [](Pixel a, Pixel b) { return std::tie(a.y, a.x) < std::tie(b.y, b.x); });

      // Peel the component into walks; `keep` is cleared as pixels are used.
      std::size_t remaining = component.size();
      while (remaining > 0) {
        const Pixel* start = nullptr;
        for (const Pixel& p : component) {
          if (!keep(p.x, p.y)) continue;
          if (!start) start = &p;
          if (unvisited_degree(p) <= 1) {
            start = &p;
            break;
          }
        }
        EdgeChain chain;
        Pixel cur = *start;
        while (true) {
          keep(cur.x, cur.y) = 0;
          --remaining;
          chain.pixels.push_back(cur);
          bool advanced = false;
          for (const Pixel o : kNeighbours) {
            const int nx = cur.x + o.x;
            const int ny = cur.y + o.y;
            if (keep.contains(nx, ny) && keep(nx, ny)) {
              cur = {nx, ny};
              advanced = true;
              break;
            }
          }
          if (!advanced) break;
        }
        if (static_cast<int>(chain.pixels.size()) >= min_length) chains.push_back(std::move(chain));
      }
    }
  }
  return chains;
}

double wire_match_cost_h(int x, int y, int d, const GrayImage& right, const GrayImage& left,
                         const GradientPair& grad_r, const GradientPair& grad_l) {
  if (!left.contains(x + d, y) || !right.contains(x, y)) return kWireCostOutOfBounds;
  const double di = std::abs(static_cast<double>(right(x, y)) - left(x + d, y));
  const double dg = std::abs(static_cast<double>(grad_r.horiz(x, y)) - grad_l.horiz(x + d, y));
  return (di + dg) * std::abs(static_cast<double>(grad_r.horiz(x, y)));
}

double wire_match_cost_v(int x, int y, int d, const GrayImage& right, const GrayImage& top,
                         const GradientPair& grad_r, const GradientPair& grad_t) {
  if (!top.contains(x, y + d) || !right.contains(x, y)) return kWireCostOutOfBounds;
  const double di = std::abs(static_cast<double>(right(x, y)) - top(x, y + d));
  const double dg = std::abs(static_cast<double>(grad_r.vert(x, y)) - grad_t.vert(x, y + d));
  return (di + dg) * std::abs(static_cast<double>(grad_r.vert(x, y)));
}

std::vector<float> edge_sgm(const std::vector<std::vector<double>>& costs, const EdgeSgmParams& params) {
  if (!(params.p1 >= 0.0) || !(params.p1 <= params.p2)) {
    throw ValidationError("SGM penalties must satisfy 0 <= p1 <= p2");
  }
  const std::size_t n = costs.size();
  std::vector<float> result(n, DisparityMap::kInvalid);
  if (n == 0) return result;
  const std::size_t nd = costs.front().size();
  for (const auto& c : costs) {
    if (c.size() != nd || nd == 0) throw DimensionError("edge chain cost rows differ in length");
  }

  std::vector<std::vector<double>> total(n, std::vector<double>(nd, 0.0));
  std::vector<double> prev(nd);
  std::vector<double> cur(nd);
  auto pass = [&](auto index_of) {
    prev = costs[index_of(0)];
    for (std::size_t d = 0; d < nd; ++d) total[index_of(0)][d] += prev[d];
    for (std::size_t i = 1; i < n; ++i) {
      const std::size_t k = index_of(i);
      sgm_step<double>(prev, costs[k], params.p1, params.p2, cur);
      for (std::size_t d = 0; d < nd; ++d) total[k][d] += cur[d];
      std::swap(prev, cur);
    }
  };
  pass([](std::size_t i) { return i; });
  pass([n](std::size_t i) { return n - 1 - i; });

  for (std::size_t i = 0; i < n; ++i) {
    const auto& t = total[i];
    std::size_t best = 0;
    for (std::size_t d = 1; d < nd; ++d) {
      if (t[d] < t[best]) best = d;
    }
    if (params.uniqueness_ratio) {
      double second = std::numeric_limits<double>::infinity();
      for (std::size_t d = 0; d < nd; ++d) {
        if (d + 1 < best || d > best + 1) second = std::min(second, t[d]);
      }
      if (t[best] >= (1.0 - *params.uniqueness_ratio) * second) continue;
    }
    double value = static_cast<double>(best);
    if (best > 0 && best + 1 < nd) value += parabola_offset(t[best - 1], t[best], t[best + 1]);
    result[i] = static_cast<float>(value);
  }
  return result;
}

DisparityMap merge_wire_disparities(const DisparityMap& dense, const WireDisparitySet& wires) {
  DisparityMap out = dense;
  for (const WireDisparity& e : wires.entries) {
    if (!out.contains(e.x, e.y)) throw DimensionError("wire disparity outside the dense map");
    if (e.disparity < 0.0f || e.disparity >= static_cast<float>(dense.num_disparities())) continue;
    out(e.x, e.y) = e.disparity;
  }
  return out;
}

WireResult semantic_wire_disparities(const GrayImage& right, const GrayImage& left,
                                     const GrayImage& top, const WireProbabilityMap& wires,
                                     const PipelineConfig& cfg) {
  cfg.validate();
  if (!right.same_shape(left) || !right.same_shape(top)) {
    throw DimensionError("trinocular images differ in size");
  }
  if (wires.width() != right.width() || wires.height() != right.height()) {
    throw DimensionError("wire probability map does not match the base image");
  }

  WireResult result;
  const BinaryMask edges = canny_edges(right, cfg.canny_low, cfg.canny_high);
  result.chains = wire_edge_pixels(edges, wires, cfg.wire_prob_threshold, cfg.wire_mask_dilation,
                                   cfg.min_chain_length);

  const GradientPair gr = compute_gradients(right);
  const GradientPair gl = compute_gradients(left);
  const GradientPair gt = compute_gradients(top);
  const int nd = cfg.num_disparities;
  EdgeSgmParams params{cfg.effective_p1(), cfg.effective_p2(), std::nullopt};
  if (cfg.uniqueness) params.uniqueness_ratio = cfg.uniqueness_ratio;

  std::vector<std::vector<float>> per_chain(result.chains.size());
  parallel_for(0, static_cast<int>(result.chains.size()), [&](int c) {
    const auto& pixels = result.chains[c].pixels;
    std::vector<std::vector<double>> costs(pixels.size(), std::vector<double>(nd));
    for (std::size_t i = 0; i < pixels.size(); ++i) {
      const auto [x, y] = pixels[i];
      for (int d = 0; d < nd; ++d) {
        const int dv = static_cast<int>(std::lround(d * cfg.baseline_ratio));
        costs[i][d] = wire_match_cost_h(x, y, d, right, left, gr, gl) +
                      wire_match_cost_v(x, y, dv, right, top, gr, gt);
      }
    }
    per_chain[c] = edge_sgm(costs, params);
  });

  for (std::size_t c = 0; c < result.chains.size(); ++c) {
    const auto& pixels = result.chains[c].pixels;
    for (std::size_t i = 0; i < pixels.size(); ++i) {
      const auto [x, y] = pixels[i];
      if (per_chain[c][i] < 0.0f) continue;
      if (gr.horiz(x, y) == 0.0f && gr.vert(x, y) == 0.0f) continue;
      result.disparities.entries.push_back({x, y, per_chain[c][i]});
    }
  }
  return result;
}

}  // namespace mvs
