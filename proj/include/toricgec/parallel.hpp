#pragma once

#include <cstddef>
#include <functional>

namespace toricgec {

// Worker cap: TORIC_GEC_THREADS when set to a positive integer, else the hardware concurrency.
std::size_t worker_count();

// Runs fn(i) for i in [0, n) on up to worker_count() threads. fn must not share mutable state.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace toricgec
