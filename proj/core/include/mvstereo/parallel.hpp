#pragma once

#include <functional>

namespace mvs {

/// Caps the worker count used by every parallel loop in the library.
/// n <= 0 selects the hardware concurrency.
void set_thread_count(int n);
int thread_count();

/// Runs body(i) for i in [begin, end) split into contiguous static chunks.
/// Bodies must write disjoint outputs; results are then independent of the
/// worker count.
void parallel_for(int begin, int end, const std::function<void(int)>& body);

}  // namespace mvs
