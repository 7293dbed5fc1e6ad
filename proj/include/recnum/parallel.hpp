#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <thread>
#include <vector>

namespace recnum {

/// Worker count used by the data-parallel kernels. Defaults to 1.
void set_thread_count(unsigned threads);
unsigned thread_count();

/// Runs body(begin, end, worker) over a static partition of [0, n) into
/// contiguous chunks, one per worker. The partition depends only on n and the
/// worker count; bodies that write results by index are deterministic.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(thread_count(), n));
  if (workers <= 1) {
    body(std::size_t{0}, n, std::size_t{0});
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = n * w / workers;
    const std::size_t end = n * (w + 1) / workers;
    pool.emplace_back([&body, begin, end, w] { body(begin, end, w); });
  }
}

/// Pairwise (tree) summation in a fixed order, independent of thread count.
template <class T>
T pairwise_sum(std::span<const T> values) {
  constexpr std::size_t kBlock = 16;
  if (values.size() <= kBlock) {
    T acc{};
    for (const auto& v : values) acc += v;
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

template <class T>
T pairwise_sum(const std::vector<T>& values) {
  return pairwise_sum(std::span<const T>(values));
}

}  // namespace recnum
