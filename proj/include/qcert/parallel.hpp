// Copyright 2026 The qcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QCERT_PARALLEL_HPP
#define QCERT_PARALLEL_HPP

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace qcert {

// Resolved worker count: explicit > QCERT_WORKERS env > hardware.
inline uint32_t resolve_workers(uint32_t requested = 0) {
  if (requested > 0) return requested;
  if (const char *env = std::getenv("QCERT_WORKERS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<uint32_t>(v);
  }
  uint32_t hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Runs fn(index) for index in [0, total) on `workers` threads. Results must
// be written to per-index slots; reductions happen afterwards in index
// order, so the outcome never depends on the worker count or scheduling.
template <typename Fn>
void parallel_for_index(uint64_t total, uint32_t workers, Fn &&fn) {
  workers = resolve_workers(workers);
  if (workers <= 1 || total < 2) {
    for (uint64_t i = 0; i < total; i++) fn(i);
    return;
  }
  std::atomic<uint64_t> next{0};
  auto run = [&] {
    for (;;) {
      uint64_t i = next.fetch_add(1);
      if (i >= total) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  for (uint32_t w = 1; w < workers; w++) pool.emplace_back(run);
  run();
  for (auto &t : pool) t.join();
}

// Runs fn(chunk_index, begin, end) over fixed-size chunks. Chunk boundaries
// depend only on (total, chunk_size), not on the worker count.
template <typename Fn>
void parallel_for_chunks(uint64_t total, uint64_t chunk_size, uint32_t workers, Fn &&fn) {
  uint64_t chunks = (total + chunk_size - 1) / chunk_size;
  parallel_for_index(chunks, workers, [&](uint64_t c) {
    uint64_t begin = c * chunk_size;
    uint64_t end = begin + chunk_size < total ? begin + chunk_size : total;
    fn(c, begin, end);
  });
}

} // namespace qcert

#endif
