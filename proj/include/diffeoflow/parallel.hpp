#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace dfl {

namespace detail {
inline int& thread_budget_ref() {
  static int budget = 0;  // 0 = auto
  return budget;
}
}  // namespace detail

/// Caps worker threads for all parallel loops. 0 restores the default
/// (hardware concurrency).
inline void set_thread_budget(int n) { detail::thread_budget_ref() = n; }

inline int thread_budget() {
  int n = detail::thread_budget_ref();
  if (n > 0) return n;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(chunk_index, begin, end) over fixed-size chunks of [0, n).
///
/// Chunk boundaries depend only on n and grain, never on the thread budget,
/// so per-chunk results (and any reduction applied in chunk-index order) are
/// identical for every thread count. fn must write only chunk-local or
/// per-index state.
template <class F>
void parallel_chunks(std::size_t n, std::size_t grain, F&& fn) {
  if (n == 0) return;
  if (grain == 0) grain = 1;
  const std::size_t n_chunks = (n + grain - 1) / grain;
  const int n_threads = std::min<std::size_t>(thread_budget(), n_chunks);

  auto run_chunk = [&](std::size_t c) {
    const std::size_t begin = c * grain;
    const std::size_t end = std::min(n, begin + grain);
    fn(c, begin, end);
  };

  if (n_threads <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  workers.reserve(n_threads);
  for (int t = 0; t < n_threads; ++t) {
    workers.emplace_back([&] {
      for (;;) {
        const std::size_t c = next.fetch_add(1, std::memory_order_relaxed);
        if (c >= n_chunks) return;
        run_chunk(c);
      }
    });
  }
  for (auto& w : workers) w.join();
}

/// Convenience: parallel loop where each index writes its own output slot.
template <class F>
void parallel_for(std::size_t n, F&& fn, std::size_t grain = 1024) {
  parallel_chunks(n, grain, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
  });
}

inline std::size_t chunk_count(std::size_t n, std::size_t grain) {
  return grain == 0 ? n : (n + grain - 1) / grain;
}

}  // namespace dfl
