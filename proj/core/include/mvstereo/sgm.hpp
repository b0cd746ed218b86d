#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "mvstereo/image.hpp"

namespace mvs {

struct PathStep {
  int dx;
  int dy;
  bool operator==(const PathStep&) const = default;
};

/// Aggregation directions. Construction rejects zero and duplicate steps.
class PathSet {
 public:
  explicit PathSet(std::vector<PathStep> steps);

  /// Horizontal, vertical and both diagonals, each in both orientations.
  static PathSet eight();

  std::span<const PathStep> steps() const { return steps_; }
  int size() const { return static_cast<int>(steps_.size()); }

 private:
  std::vector<PathStep> steps_;
};

/// One step of the path recurrence:
///   out(d) = cost(d) + min(prev(d), prev(d+-1) + p1, min_k prev(k) + p2) - min_k prev(k)
template <typename T>
void sgm_step(std::span<const T> prev, std::span<const T> cost, T p1, T p2, std::span<T> out) {
  const T prev_min = *std::ranges::min_element(prev);
  const int n = static_cast<int>(cost.size());
  for (int d = 0; d < n; ++d) {
    T best = prev[d];
    if (d > 0) best = std::min(best, prev[d - 1] + p1);
    if (d + 1 < n) best = std::min(best, prev[d + 1] + p1);
    best = std::min(best, prev_min + p2);
    out[d] = cost[d] + (best - prev_min);
  }
}

/// Semi-global aggregation: the sum over all paths of the recurrence above,
/// with L = C at path starts. Throws ValidationError unless 0 <= p1 <= p2.
CostVolume sgm_aggregate(const CostVolume& vol, double p1, double p2,
                         const PathSet& paths = PathSet::eight());

}  // namespace mvs
