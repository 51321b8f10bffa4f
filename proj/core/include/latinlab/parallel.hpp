#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace latinlab {

/// Runs fn(i) for i in [0, count) across up to `threads` workers. Work is
/// pre-chunked by index, so any result the caller writes to slot i is
/// identical no matter how many threads actually execute.
inline void parallel_for_indexed(std::size_t count, const std::function<void(std::size_t)>& fn,
                                 unsigned threads = 0) {
  if (count == 0) return;
  unsigned hw = threads ? threads : std::thread::hardware_concurrency();
  if (hw <= 1 || count == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  if (hw > count) hw = static_cast<unsigned>(count);
  std::vector<std::thread> pool;
  pool.reserve(hw);
  for (unsigned w = 0; w < hw; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += hw) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace latinlab
