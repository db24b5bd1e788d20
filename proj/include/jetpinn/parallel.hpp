#pragma once
#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace jetpinn {

// Runs fn(shard, worker) for shard = 0..n_shards-1 across up to `threads`
// workers. Shards are claimed through an atomic counter; any state that must
// be reproducible is keyed by shard, never by worker or claim order.
inline void parallel_shards(int n_shards, int threads,
                            const std::function<void(int shard, int worker)>& fn) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (threads > n_shards) threads = n_shards;
  if (threads == 1) {
    for (int s = 0; s < n_shards; ++s) fn(s, 0);
    return;
  }
  std::atomic<int> next{0};
  auto work = [&](int worker) {
    for (;;) {
      const int s = next.fetch_add(1);
      if (s >= n_shards) break;
      fn(s, worker);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads - 1));
  for (int w = 1; w < threads; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& th : pool) th.join();
}

}  // namespace jetpinn
