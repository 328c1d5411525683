#pragma once

#include <cstddef>
#include <functional>

namespace flagkneser {

/// Thread count used when a caller passes 0: FLAGKNESER_THREADS if set,
/// otherwise the hardware concurrency.
int default_threads();
void set_default_threads(int threads);

/// Splits [0, n) into contiguous chunks, one per worker, and runs
/// fn(begin, end, worker) on each. Blocks until all chunks finish and
/// rethrows the first exception raised by a worker.
void parallel_chunks(std::size_t n, int threads,
                     const std::function<void(std::size_t begin, std::size_t end, int worker)>& fn);

}  // namespace flagkneser
