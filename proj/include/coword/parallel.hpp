#ifndef COWORD_PARALLEL_HPP
#define COWORD_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace coword {

// Runs fn(i) for every i in [0, n) across at most `threads` workers in
// contiguous index chunks. Callers must write results into per-index slots
// so output is identical for every thread count. The first exception thrown
// by any worker is rethrown on the calling thread.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace coword

#endif  // COWORD_PARALLEL_HPP
