#pragma once

#include <cstddef>
#include <functional>

namespace jd {

/// Runs fn(i) for i in [0, count) on up to `jobs` threads (0 = hardware
/// concurrency). Work items are claimed dynamically.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace jd
