#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace quench {

// Data-parallel index loop. Each index is evaluated exactly once; callers
// write results into pre-assigned slots so the output is independent of the
// worker count and of scheduling order.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                         unsigned workers = 0) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
}

// Counter-based generator: a few rounds of splitmix64 keyed by (seed, stream,
// counter). Stateless, so noise draws are reproducible regardless of how the
// surrounding sweep is scheduled.
inline std::uint64_t keyed_mix(std::uint64_t seed, std::uint64_t stream,
                              std::uint64_t counter) {
  std::uint64_t z = seed;
  for (std::uint64_t w : {stream + 0x9e3779b97f4a7c15ULL, counter + 0xbf58476d1ce4e5b9ULL}) {
    z += w;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
  }
  return z;
}

// Uniform double in [0, 1) from 53 high bits.
inline double keyed_uniform(std::uint64_t seed, std::uint64_t stream,
                            std::uint64_t counter) {
  return static_cast<double>(keyed_mix(seed, stream, counter) >> 11) * 0x1.0p-53;
}

}  // namespace quench
