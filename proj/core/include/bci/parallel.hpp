#ifndef BCI_PARALLEL_HPP
#define BCI_PARALLEL_HPP

#include <functional>

namespace bci {

/// Runs fn(i) for i in [0, n) on up to `threads` worker threads
/// (0 = hardware concurrency). Work items must not touch shared mutable
/// state except their own output slot; the first exception thrown by a
/// work item is rethrown after all workers join.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace bci

#endif  // BCI_PARALLEL_HPP
