#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace bel {

// Chunked reduction with boundaries that depend only on n. Chunk partials are
// combined serially in index order, so the result is bit-stable for any
// thread count.
template <typename T, typename F>
T chunked_sum(std::size_t n, F&& per_index) {
  if (n == 0) return T{};
  constexpr std::size_t kChunk = 4096;
  const std::size_t nchunks = (n + kChunk - 1) / kChunk;
  std::vector<T> partial(nchunks, T{});
#pragma omp parallel for schedule(static)
  for (long long c = 0; c < static_cast<long long>(nchunks); ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
    const std::size_t hi = std::min(n, lo + kChunk);
    T acc{};
    for (std::size_t i = lo; i < hi; ++i) acc += per_index(i);
    partial[static_cast<std::size_t>(c)] = acc;
  }
  T total{};
  for (const T& t : partial) total += t;
  return total;
}

template <typename F>
void parallel_for(std::size_t n, F&& fn) {
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    fn(static_cast<std::size_t>(i));
}

}  // namespace bel
