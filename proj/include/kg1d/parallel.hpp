#ifndef KG1D_PARALLEL_HPP
#define KG1D_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace kg1d {

/// Worker count: requested > 0 wins; otherwise the KG1D_THREADS environment
/// variable, otherwise hardware concurrency.  Always at least 1.
int resolve_thread_count(int requested);

/// Runs body(i) for i in [0, n) on a pool of threads.  Exceptions are
/// captured per index and the lowest-index one is rethrown after the join,
/// so failures are reported identically to sequential execution.
void parallel_for(std::size_t n, int n_threads, const std::function<void(std::size_t)>& body);

} // namespace kg1d

#endif
