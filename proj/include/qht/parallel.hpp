#pragma once

#include <array>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qht::par {

enum class Exec { Serial, Parallel };

// Thread cap: QHT_THREADS if set, otherwise the OpenMP default.
int max_threads();
void set_max_threads(int n);

// Fixed number of chunks regardless of thread count, so reductions combine partial
// sums in the same order and results are bitwise reproducible.
inline constexpr std::uint64_t kChunks = 256;

// Sums K accumulators of f(i, acc) over [0, total).  f adds into acc.
template <std::size_t K, class F>
std::array<double, K> chunked_sum(std::uint64_t total, Exec exec, F f) {
  const std::uint64_t chunks = std::min<std::uint64_t>(kChunks, total ? total : 1);
  std::vector<std::array<double, K>> part(chunks);
  const auto body = [&](std::int64_t c) {
    std::array<double, K> acc{};
    const std::uint64_t lo = total * c / chunks, hi = total * (c + 1) / chunks;
    for (std::uint64_t i = lo; i < hi; ++i) f(i, acc);
    part[c] = acc;
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(max_threads())
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) body(c);
  } else {
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) body(c);
  }
  std::array<double, K> out{};
  for (const auto& p : part)
    for (std::size_t k = 0; k < K; ++k) out[k] += p[k];
  return out;
}

// Runs f(i) for i in [0, n); each index writes only its own output slot.
template <class F>
void for_each_index(std::int64_t n, Exec exec, F f) {
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(max_threads())
    for (std::int64_t i = 0; i < n; ++i) f(i);
  } else {
    for (std::int64_t i = 0; i < n; ++i) f(i);
  }
}

}  // namespace qht::par
