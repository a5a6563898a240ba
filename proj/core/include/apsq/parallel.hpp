#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace apsq {

// Worker count for data-parallel loops: APSQ_THREADS env var unless
// overridden (the CLI maps --threads here). Defaults to 1; results are
// independent of the value by construction.
unsigned thread_count();
void set_thread_count(unsigned n);

// Splits [begin, end) into one chunk per thread and combines the partial
// results in chunk order, so the reduction is deterministic.
template <typename T, typename ChunkFn>
T parallel_reduce(std::uint64_t begin, std::uint64_t end, T init, ChunkFn chunk) {
  unsigned nt = thread_count();
  std::uint64_t span = end > begin ? end - begin : 0;
  if (nt <= 1 || span < 2 * nt) {
    T acc = init;
    acc += chunk(begin, end);
    return acc;
  }
  std::vector<T> partial(nt, init);
  std::vector<std::thread> workers;
  std::uint64_t step = span / nt;
  for (unsigned t = 0; t < nt; ++t) {
    std::uint64_t lo = begin + t * step;
    std::uint64_t hi = (t + 1 == nt) ? end : lo + step;
    workers.emplace_back([&, t, lo, hi] { partial[t] = chunk(lo, hi); });
  }
  for (auto& w : workers) w.join();
  T acc = init;
  for (const auto& v : partial) acc += v;
  return acc;
}

}  // namespace apsq
