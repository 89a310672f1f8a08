#pragma once

#include <cstddef>
#include <functional>

namespace skeletal {

// SKELETAL_THREADS if set and positive, else hardware concurrency (at least 1)
unsigned thread_count();

// runs fn(0..n-1) on up to `threads` workers; rethrows the first exception
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned threads = 0);

}  // namespace skeletal
