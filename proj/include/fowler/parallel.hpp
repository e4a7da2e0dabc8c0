#pragma once

#include <cstddef>
#include <functional>

namespace fowler {

/// Worker cap: min(hardware_concurrency, FOWLER_LAB_THREADS when set).
int max_threads();

/// Static partition of [0, n) into per-worker chunks; fn(begin, end) runs on
/// its own thread. Callers keep determinism by writing to disjoint slots and
/// reducing sequentially afterwards.
void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace fowler
