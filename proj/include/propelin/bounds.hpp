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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "propelin/errors.hpp"

namespace propelin {

enum class BoundFamily { phelps, mds };

// Asymptotic lower bounds on the number of pairwise inequivalent codes,
// driven by the Hardy-Ramanujan growth of the partition function:
//   phelps(n) = exp(pi * sqrt(2n/3)) / (8 n^2 sqrt(3))      length 4n
//   mds(n)    = exp(pi * sqrt(2(n-1)/3)) / (4 (n-1) sqrt(3)) length n
inline double bound_evaluate(BoundFamily family, std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("bound_evaluate: n must be >= 2");
  const double pi = std::numbers::pi;
  const double s3 = std::numbers::sqrt3;
  if (family == BoundFamily::phelps) {
    const double x = static_cast<double>(n);
    return std::exp(pi * std::sqrt(2.0 * x / 3.0)) / (8.0 * x * x * s3);
  }
  const double x = static_cast<double>(n - 1);
  return std::exp(pi * std::sqrt(2.0 * x / 3.0)) / (4.0 * x * s3);
}

// Number of integer partitions of n, exact in 64 bits.
inline std::uint64_t partition_count(std::uint64_t n) {
  std::vector<std::uint64_t> dp(n + 1, 0);
  dp[0] = 1;
  for (std::uint64_t part = 1; part <= n; ++part)
    for (std::uint64_t s = part; s <= n; ++s)
      if (__builtin_add_overflow(dp[s], dp[s - part], &dp[s]))
        throw std::overflow_error("partition_count: value exceeds 64 bits");
  return dp[n];
}

// Number of quasigroup shapes on n coordinates: every subset of the n-2
// admissible cut positions.
inline std::uint64_t composition_count(std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("composition_count: n must be >= 2");
  if (n - 2 >= 64)
    throw std::overflow_error("composition_count: value exceeds 64 bits");
  return std::uint64_t{1} << (n - 2);
}

// All cut lists for the given n, in lexicographic order.
inline std::vector<std::vector<std::size_t>> all_cut_lists(std::size_t n) {
  if (n < 2) throw std::invalid_argument("all_cut_lists: n must be >= 2");
  if (n - 2 >= 20)
    throw budget_error("all_cut_lists: " + std::to_string(n - 2) +
                       " cut positions; refusing to list 2^" +
                       std::to_string(n - 2) + " shapes");
  const std::size_t positions = n - 2;
  std::vector<std::vector<std::size_t>> out;
  out.reserve(std::size_t{1} << positions);
  for (std::size_t mask = 0; mask < (std::size_t{1} << positions); ++mask) {
    std::vector<std::size_t> cuts;
    for (std::size_t i = 0; i < positions; ++i)
      if (mask & (std::size_t{1} << i)) cuts.push_back(i + 1);
    out.push_back(std::move(cuts));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace propelin
