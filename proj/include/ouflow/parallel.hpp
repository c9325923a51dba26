#ifndef OUFLOW_PARALLEL_HPP
#define OUFLOW_PARALLEL_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace ouflow {

/// Worker cap: OUFLOW_THREADS if set (clamped to >= 1), otherwise the
/// machine default. Read once per process.
int max_threads();

/// Run fn over [begin, end) split into contiguous chunks, at most
/// max_threads() workers. Chunk boundaries depend only on (begin, end,
/// thread count), so results composed per-chunk are reproducible at a
/// fixed thread count.
void parallel_for(std::ptrdiff_t begin, std::ptrdiff_t end,
                  const std::function<void(std::ptrdiff_t, std::ptrdiff_t)>& fn);

/// Pairwise (cascade) summation over fixed-size blocks. The reduction tree
/// depends only on the data length, never on the thread count, so reported
/// norms are bit-for-bit reproducible.
double pairwise_sum(std::span<const double> values);

} // namespace ouflow

#endif
