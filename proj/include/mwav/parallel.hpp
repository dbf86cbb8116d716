#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

namespace mwav {

// Deterministic parallel sweeps over an index range. Workers pull fixed-size
// blocks from an atomic cursor; a find sweep publishes the smallest index
// found so far, letting workers skip blocks that start past it. The final
// reduction is by index, so the result never depends on scheduling.

inline unsigned sweep_threads(std::uint64_t count) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw <= 1 || count < 4096) return 1;
  return hw;
}

// Returns the value produced at the smallest index where `probe` yields one.
template <typename V, typename Probe>
std::optional<std::pair<std::uint64_t, V>> find_first(std::uint64_t count, Probe&& probe) {
  unsigned threads = sweep_threads(count);
  if (threads == 1) {
    for (std::uint64_t i = 0; i < count; ++i)
      if (std::optional<V> v = probe(i)) return std::make_pair(i, std::move(*v));
    return std::nullopt;
  }

  constexpr std::uint64_t kBlock = 1024;
  std::atomic<std::uint64_t> cursor{0};
  std::atomic<std::uint64_t> best{UINT64_MAX};
  std::vector<std::optional<std::pair<std::uint64_t, V>>> found(threads);

  auto work = [&](unsigned t) {
    while (true) {
      std::uint64_t lo = cursor.fetch_add(kBlock);
      if (lo >= count || lo > best.load(std::memory_order_relaxed)) return;
      std::uint64_t hi = std::min(lo + kBlock, count);
      for (std::uint64_t i = lo; i < hi; ++i) {
        if (std::optional<V> v = probe(i)) {
          if (!found[t] || i < found[t]->first) found[t] = std::make_pair(i, std::move(*v));
          // publish so blocks past i can be skipped
          std::uint64_t cur = best.load(std::memory_order_relaxed);
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
          break;  // indices after i in this block cannot beat i
        }
      }
    }
  };

  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  for (auto& th : pool) th.join();

  std::optional<std::pair<std::uint64_t, V>> result;
  for (auto& f : found)
    if (f && (!result || f->first < result->first)) result = std::move(f);
  return result;
}

// Visits every index and keeps the maximum value under `less`, breaking ties
// toward the smaller index.
template <typename V, typename Map, typename Less>
std::pair<std::uint64_t, V> max_over(std::uint64_t count, Map&& map, Less&& less) {
  unsigned threads = sweep_threads(count);
  if (threads == 1) {
    std::uint64_t arg = 0;
    V bestv = map(0);
    for (std::uint64_t i = 1; i < count; ++i) {
      V v = map(i);
      if (less(bestv, v)) {
        bestv = std::move(v);
        arg = i;
      }
    }
    return {arg, std::move(bestv)};
  }

  constexpr std::uint64_t kBlock = 1024;
  std::atomic<std::uint64_t> cursor{0};
  std::vector<std::optional<std::pair<std::uint64_t, V>>> locals(threads);

  auto work = [&](unsigned t) {
    while (true) {
      std::uint64_t lo = cursor.fetch_add(kBlock);
      if (lo >= count) return;
      std::uint64_t hi = std::min(lo + kBlock, count);
      for (std::uint64_t i = lo; i < hi; ++i) {
        V v = map(i);
        bool better = !locals[t] || less(locals[t]->second, v) ||
                      (!less(v, locals[t]->second) && i < locals[t]->first);
        if (better) locals[t] = std::make_pair(i, std::move(v));
      }
    }
  };

  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  for (auto& th : pool) th.join();

  std::optional<std::pair<std::uint64_t, V>> result;
  for (auto& l : locals) {
    if (!l) continue;
    if (!result || less(result->second, l->second) ||
        (!less(l->second, result->second) && l->first < result->first))
      result = std::move(l);
  }
  return std::move(*result);
}

}  // namespace mwav
