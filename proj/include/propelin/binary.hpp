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
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace propelin {

// Fixed-length word over GF(2), packed 64 coordinates per block.
// Coordinate 0 sits in the most significant bit of block 0, so comparing
// blocks numerically in order gives the lexicographic order of bit strings.
class BinaryWord {
 public:
  BinaryWord() = default;

  explicit BinaryWord(std::size_t length)
      : blocks_((length + 63) / 64, 0), len_(length) {}

  static BinaryWord from_string(std::string_view bits) {
    BinaryWord w(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1')
        w.set(i, true);
      else if (bits[i] != '0')
        throw std::invalid_argument("binary word: invalid character");
    }
    return w;
  }

  std::size_t length() const { return len_; }

  bool get(std::size_t i) const {
    if (i >= len_) throw std::out_of_range("BinaryWord::get");
    return (blocks_[i >> 6] >> (63 - (i & 63))) & 1u;
  }

  void set(std::size_t i, bool v) {
    if (i >= len_) throw std::out_of_range("BinaryWord::set");
    const std::uint64_t mask = 1ull << (63 - (i & 63));
    if (v)
      blocks_[i >> 6] |= mask;
    else
      blocks_[i >> 6] &= ~mask;
  }

  std::size_t weight() const {
    std::size_t w = 0;
    for (std::uint64_t b : blocks_) w += std::popcount(b);
    return w;
  }

  BinaryWord& operator^=(const BinaryWord& o) {
    if (len_ != o.len_)
      throw std::invalid_argument("BinaryWord: length mismatch");
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] ^= o.blocks_[i];
    return *this;
  }

  friend BinaryWord operator^(BinaryWord a, const BinaryWord& b) {
    a ^= b;
    return a;
  }

  friend bool operator==(const BinaryWord&, const BinaryWord&) = default;
  friend auto operator<=>(const BinaryWord&, const BinaryWord&) = default;

  std::string to_string() const {
    std::string s;
    s.reserve(len_);
    for (std::size_t i = 0; i < len_; ++i) s.push_back(get(i) ? '1' : '0');
    return s;
  }

  const std::vector<std::uint64_t>& blocks() const { return blocks_; }

 private:
  std::vector<std::uint64_t> blocks_;
  std::size_t len_ = 0;
};

inline std::size_t hamming_distance(const BinaryWord& a, const BinaryWord& b) {
  if (a.length() != b.length())
    throw std::invalid_argument("hamming_distance: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.blocks().size(); ++i)
    d += std::popcount(a.blocks()[i] ^ b.blocks()[i]);
  return d;
}

// Parity of |supp(a) & supp(b)|; even overlap means orthogonality.
inline bool even_overlap(const BinaryWord& a, const BinaryWord& b) {
  if (a.length() != b.length())
    throw std::invalid_argument("even_overlap: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.blocks().size(); ++i)
    d += std::popcount(a.blocks()[i] & b.blocks()[i]);
  return (d & 1) == 0;
}

// Rank of the span of the given words via Gaussian elimination.
inline std::size_t gf2_rank(std::vector<BinaryWord> rows) {
  if (rows.empty()) return 0;
  const std::size_t length = rows[0].length();
  for (const BinaryWord& r : rows)
    if (r.length() != length)
      throw std::invalid_argument("gf2_rank: length mismatch");
  std::size_t rank = 0;
  for (std::size_t c = 0; c < length && rank < rows.size(); ++c) {
    std::size_t sel = rank;
    while (sel < rows.size() && !rows[sel].get(c)) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r)
      if (rows[r].get(c)) rows[r] ^= rows[rank];
    ++rank;
  }
  return rank;
}

// Basis of {x : M x = 0} for the row matrix M.
inline std::vector<BinaryWord> gf2_nullspace_basis(std::vector<BinaryWord> rows,
                                                   std::size_t length) {
  for (const BinaryWord& r : rows)
    if (r.length() != length)
      throw std::invalid_argument("gf2_nullspace_basis: length mismatch");
  constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> pivot_of_col(length, npos);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < length && rank < rows.size(); ++c) {
    std::size_t sel = rank;
    while (sel < rows.size() && !rows[sel].get(c)) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rank && rows[r].get(c)) rows[r] ^= rows[rank];
    pivot_of_col[c] = rank;
    ++rank;
  }
  std::vector<BinaryWord> basis;
  for (std::size_t c = 0; c < length; ++c) {
    if (pivot_of_col[c] != npos) continue;
    BinaryWord v(length);
    v.set(c, true);
    for (std::size_t c2 = 0; c2 < length; ++c2)
      if (pivot_of_col[c2] != npos && rows[pivot_of_col[c2]].get(c))
        v.set(c2, true);
    basis.push_back(v);
  }
  return basis;
}

// Explicitly materialized code: sorted, duplicate-free word list.
struct ExplicitCode {
  std::size_t length = 0;
  std::vector<BinaryWord> words;

  static ExplicitCode from_words(std::size_t length,
                                 std::vector<BinaryWord> ws) {
    for (const BinaryWord& w : ws)
      if (w.length() != length)
        throw std::invalid_argument("ExplicitCode: length mismatch");
    std::sort(ws.begin(), ws.end());
    ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
    return ExplicitCode{length, std::move(ws)};
  }

  std::size_t size() const { return words.size(); }

  bool contains(const BinaryWord& w) const {
    return std::binary_search(words.begin(), words.end(), w);
  }

  std::optional<std::size_t> index_of(const BinaryWord& w) const {
    auto it = std::lower_bound(words.begin(), words.end(), w);
    if (it != words.end() && *it == w)
      return static_cast<std::size_t>(it - words.begin());
    return std::nullopt;
  }

  friend bool operator==(const ExplicitCode&, const ExplicitCode&) = default;
};

// Linear code given by parity checks.
struct LinearCode {
  std::size_t length = 0;
  std::vector<BinaryWord> parity_checks;
  std::size_t dimension = 0;
};

inline bool lin_contains(const LinearCode& code, const BinaryWord& w) {
  if (w.length() != code.length)
    throw std::invalid_argument("lin_contains: length mismatch");
  for (const BinaryWord& row : code.parity_checks)
    if (!even_overlap(row, w)) return false;
  return true;
}

// Extended Hamming code of length n = 2^k, k >= 2: the Hamming code of
// length n-1 whose check columns are the numbers 1..n-1 in order, extended
// by an overall parity bit in the last coordinate.  Dimension n-1-log2(n).
inline LinearCode extended_hamming(std::size_t n) {
  if (n < 4 || (n & (n - 1)) != 0)
    throw std::invalid_argument("extended_hamming: length must be 2^k, k >= 2");
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  std::vector<BinaryWord> checks;
  for (std::size_t r = 0; r < k; ++r) {
    BinaryWord row(n);
    for (std::size_t j = 0; j + 1 < n; ++j)
      if (((j + 1) >> r) & 1u) row.set(j, true);
    checks.push_back(row);
  }
  BinaryWord ones(n);
  for (std::size_t j = 0; j < n; ++j) ones.set(j, true);
  checks.push_back(ones);
  return LinearCode{n, std::move(checks), n - k - 1};
}

// All codewords of a linear code, sorted.  Intended for small dimensions;
// callers guard the size before asking.
inline std::vector<BinaryWord> lin_enumerate(const LinearCode& code) {
  std::vector<BinaryWord> basis =
      gf2_nullspace_basis(code.parity_checks, code.length);
  if (basis.size() != code.dimension)
    throw std::logic_error("lin_enumerate: dimension mismatch");
  if (basis.size() >= 28)
    throw std::invalid_argument("lin_enumerate: dimension too large");
  std::vector<BinaryWord> out;
  out.reserve(std::size_t{1} << basis.size());
  BinaryWord w(code.length);
  out.push_back(w);
  // Gray-code walk: one basis vector flips per step.
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << basis.size()); ++i) {
    w ^= basis[std::countr_zero(i)];
    out.push_back(w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::size_t min_distance(const ExplicitCode& code) {
  if (code.size() < 2)
    throw std::invalid_argument("min_distance: need at least two words");
  std::size_t best = code.length + 1;
  for (std::size_t i = 0; i < code.size(); ++i)
    for (std::size_t j = i + 1; j < code.size(); ++j)
      best = std::min(best, hamming_distance(code.words[i], code.words[j]));
  return best;
}

inline std::map<std::size_t, std::size_t> weight_distribution(
    const ExplicitCode& code) {
  if (code.size() == 0)
    throw std::invalid_argument("weight_distribution: empty code");
  std::map<std::size_t, std::size_t> hist;
  for (const BinaryWord& w : code.words) ++hist[w.weight()];
  return hist;
}

namespace detail {

inline std::uint64_t parse_header_field(const std::string& token,
                                        std::string_view key) {
  if (token.size() <= key.size() || token.compare(0, key.size(), key) != 0)
    throw std::invalid_argument("code file: malformed header");
  const std::string value = token.substr(key.size());
  std::size_t used = 0;
  std::uint64_t parsed = 0;
  try {
    parsed = std::stoull(value, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("code file: malformed header");
  }
  if (used != value.size())
    throw std::invalid_argument("code file: malformed header");
  return parsed;
}

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream iss(line);
  std::vector<std::string> out;
  std::string tok;
  while (iss >> tok) out.push_back(tok);
  return out;
}

}  // namespace detail

// BINCODE v1: header "BINCODE v1 length=<L> size=<S>", then S codewords,
// one '0'/'1' string per line, sorted lexicographically.
inline void write_bincode(std::ostream& os, const ExplicitCode& code) {
  os << "BINCODE v1 length=" << code.length << " size=" << code.size() << "\n";
  for (const BinaryWord& w : code.words) os << w.to_string() << "\n";
}

inline ExplicitCode read_bincode(std::istream& is) {
  std::string line;
  if (!std::getline(is, line))
    throw std::invalid_argument("BINCODE: missing header");
  const auto tok = detail::split_ws(line);
  if (tok.size() != 4 || tok[0] != "BINCODE" || tok[1] != "v1")
    throw std::invalid_argument("BINCODE: malformed header");
  const std::uint64_t length = detail::parse_header_field(tok[2], "length=");
  const std::uint64_t size = detail::parse_header_field(tok[3], "size=");
  std::vector<BinaryWord> words;
  words.reserve(size);
  for (std::uint64_t i = 0; i < size; ++i) {
    if (!std::getline(is, line))
      throw std::invalid_argument("BINCODE: truncated file");
    if (line.size() != length)
      throw std::invalid_argument("BINCODE: wrong word length");
    BinaryWord w = BinaryWord::from_string(line);
    if (!words.empty() && !(words.back() < w))
      throw std::invalid_argument("BINCODE: words not sorted");
    words.push_back(std::move(w));
  }
  if (std::getline(is, line))
    throw std::invalid_argument("BINCODE: trailing content");
  return ExplicitCode{static_cast<std::size_t>(length), std::move(words)};
}

}  // namespace propelin
