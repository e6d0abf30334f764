#pragma once

#include <cstddef>
#include <functional>

namespace necksim {

/// Worker count: hardware concurrency, capped by NECKSIM_THREADS when set.
unsigned threadCount();

/// Runs body(i) for i in [0, count) over contiguous static chunks. Bodies must
/// only write to state owned by index i.
void parallelFor(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace necksim
