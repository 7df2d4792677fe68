#pragma once

// Deterministic chunked parallelism for Monte-Carlo loops: work is split into
// per-worker chunks with independent RNG substreams and partial results are
// merged in fixed chunk order, so results are reproducible at a fixed worker
// count.

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "qerg/types.hpp"

namespace qerg {

struct Chunk {
  std::int64_t begin = 0;
  std::int64_t end = 0;
  std::uint64_t seed = 0;  // substream seed for this chunk
};

inline std::vector<Chunk> make_chunks(std::int64_t n, int workers,
                                      std::uint64_t base_seed) {
  if (workers < 1) workers = 1;
  std::vector<Chunk> chunks;
  const std::int64_t per = (n + workers - 1) / workers;
  for (std::int64_t b = 0, i = 0; b < n; b += per, ++i) {
    chunks.push_back({b, std::min(n, b + per),
                      base_seed ^ (0x9e3779b97f4a7c15ULL * (i + 1))});
  }
  return chunks;
}

// Runs fn(chunk, chunk_index) possibly in parallel; caller merges per-chunk
// results in index order.
inline void run_chunks(const std::vector<Chunk>& chunks,
                       const std::function<void(const Chunk&, int)>& fn,
                       int workers) {
  if (workers <= 1 || chunks.size() <= 1) {
    for (int i = 0; i < static_cast<int>(chunks.size()); ++i)
      fn(chunks[i], i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(chunks.size());
  for (int i = 0; i < static_cast<int>(chunks.size()); ++i)
    pool.emplace_back(fn, chunks[i], i);
  for (auto& t : pool) t.join();
}

}  // namespace qerg
