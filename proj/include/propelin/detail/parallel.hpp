// Copyright 2026 The propelin authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

namespace propelin::detail {

// Deterministic source for sampled checks.  Draws use modulo reduction so
// that a seed reproduces the same sequence on every toolchain (the standard
// distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  std::uint64_t next_below(std::uint64_t n) { return n ? gen_() % n : 0; }

  bool next_bit() { return (gen_() & 1) != 0; }

 private:
  std::mt19937_64 gen_;
};

inline unsigned resolve_threads(unsigned requested) {
  if (requested) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Splits [0, count) into fixed-size chunks and runs the worker over them on
// a small pool.  Chunk boundaries do not depend on the thread count, so any
// merge that folds chunk results in index order is deterministic.  The stop
// flag lets workers abort cooperatively; workers that never set it keep the
// scan exhaustive.
template <typename ChunkResult, typename Worker>
std::vector<ChunkResult> run_chunks(std::uint64_t count, std::uint64_t chunk,
                                    unsigned threads, Worker worker) {
  const std::uint64_t nchunks = count ? (count + chunk - 1) / chunk : 0;
  std::vector<ChunkResult> results(nchunks);
  if (nchunks == 0) return results;
  std::atomic<bool> stop{false};
  std::atomic<std::uint64_t> next{0};
  auto body = [&] {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= nchunks) return;
      const std::uint64_t begin = c * chunk;
      results[c] = worker(begin, std::min(count, begin + chunk), stop);
    }
  };
  const unsigned t = static_cast<unsigned>(std::min<std::uint64_t>(
      resolve_threads(threads), nchunks));
  if (t <= 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (unsigned i = 0; i < t; ++i) pool.emplace_back(body);
    for (auto& th : pool) th.join();
  }
  return results;
}

}  // namespace propelin::detail
