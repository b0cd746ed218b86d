#include "mvstereo/sgm.hpp"

#include <string>

#include "mvstereo/parallel.hpp"

namespace mvs {

PathSet::PathSet(std::vector<PathStep> steps) : steps_(std::move(steps)) {
  if (steps_.empty()) throw ValidationError("path set is empty");
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    if (steps_[i].dx == 0 && steps_[i].dy == 0) throw ValidationError("path step is the zero vector");
    for (std::size_t j = 0; j < i; ++j) {
      if (steps_[i] == steps_[j]) throw ValidationError("duplicate path direction");
    }
  }
}

PathSet PathSet::eight() {
  return PathSet({{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1}});
}

CostVolume sgm_aggregate(const CostVolume& vol, double p1, double p2, const PathSet& paths) {
  if (!(p1 >= 0.0) || !(p1 <= p2)) {
    throw ValidationError("SGM penalties must satisfy 0 <= p1 <= p2 (got p1=" + std::to_string(p1) +
                          ", p2=" + std::to_string(p2) + ")");
  }
  const int w = vol.width();
  const int h = vol.height();
  const int nd = vol.num_disparities();
  const float fp1 = static_cast<float>(p1);
  const float fp2 = static_cast<float>(p2);
  CostVolume out(w, h, nd, 0.0f);

  struct Start {
    int x;
    int y;
  };
  std::vector<Start> starts;
  // Each pixel lies on exactly one chain per direction, so chains of one
  // direction write disjoint pixels and directions are summed in order.
  for (const PathStep step : paths.steps()) {
    starts.clear();
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const int px = x - step.dx;
        const int py = y - step.dy;
        if (px < 0 || py < 0 || px >= w || py >= h) starts.push_back({x, y});
      }
    }
    parallel_for(0, static_cast<int>(starts.size()), [&](int i) {
      std::vector<float> prev(nd);
      std::vector<float> cur(nd);
      int x = starts[i].x;
      int y = starts[i].y;
      {
        const auto c = vol.costs(x, y);
        std::ranges::copy(c, prev.begin());
        auto o = out.costs(x, y);
        for (int d = 0; d < nd; ++d) o[d] += prev[d];
      }
      x += step.dx;
      y += step.dy;
      while (x >= 0 && y >= 0 && x < w && y < h) {
        sgm_step<float>(prev, vol.costs(x, y), fp1, fp2, cur);
        auto o = out.costs(x, y);
        for (int d = 0; d < nd; ++d) o[d] += cur[d];
        std::swap(prev, cur);
        x += step.dx;
        y += step.dy;
      }
    });
  }
  return out;
}

}  // namespace mvs
