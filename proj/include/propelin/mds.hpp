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
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "propelin/binary.hpp"
#include "propelin/errors.hpp"
#include "propelin/quat.hpp"

namespace propelin {

// Shape of an n-ary quasigroup over E4 of the block form
//   f(x) = (x_1 (+) ... (+) x_{i_1}) * (x_{i_1+1} (+) ... (+) x_{i_2}) * ...
// given by the strictly increasing cut positions 1 <= i_1 < ... < i_{m-2}
// <= n-2.  An empty cut list means a single (+) block.  The MDS code of the
// shape is {(x, f(x)) : x in E4^{n-1}}, with 4^{n-1} words and distance 2.
struct QuasigroupShape {
  std::size_t n = 2;
  std::vector<std::size_t> cuts;

  QuasigroupShape(std::size_t n_, std::vector<std::size_t> cuts_)
      : n(n_), cuts(std::move(cuts_)) {
    if (n < 2) throw std::invalid_argument("QuasigroupShape: n must be >= 2");
    std::size_t prev = 0;
    for (std::size_t c : cuts) {
      if (c <= prev || c + 2 > n)
        throw std::invalid_argument(
            "QuasigroupShape: cuts must increase strictly within [1, n-2]");
      prev = c;
    }
  }

  // Arity of the underlying quasigroup decomposition; block_count() = m - 1.
  std::size_t m() const { return cuts.size() + 2; }
  std::size_t block_count() const { return cuts.size() + 1; }

  // Half-open 0-based symbol range of block j over positions 1..n-1.
  std::pair<std::size_t, std::size_t> block_range(std::size_t j) const {
    if (j >= block_count()) throw std::out_of_range("block_range");
    const std::size_t lo = (j == 0) ? 0 : cuts[j - 1];
    const std::size_t hi = (j + 1 == block_count()) ? n - 1 : cuts[j];
    return {lo, hi};
  }

  std::size_t block_of(std::size_t pos) const {
    if (pos + 1 >= n) throw std::out_of_range("block_of");
    std::size_t j = 0;
    while (cuts.size() > j && pos >= cuts[j]) ++j;
    return j;
  }

  friend bool operator==(const QuasigroupShape&, const QuasigroupShape&) =
      default;
};

// Per-block (+) sums of the first n-1 symbols of w.
inline QuatWord partial_sums(const QuasigroupShape& shape, const QuatWord& w) {
  if (w.size() + 1 != shape.n && w.size() != shape.n)
    throw std::invalid_argument("partial_sums: bad word length");
  QuatWord sums(shape.block_count());
  for (std::size_t j = 0; j < shape.block_count(); ++j) {
    const auto [lo, hi] = shape.block_range(j);
    sums[j] = oplus_fold(w, lo, hi);
  }
  return sums;
}

inline Quat eval_quasigroup(const QuasigroupShape& shape, const QuatWord& x) {
  if (x.size() + 1 != shape.n)
    throw std::invalid_argument("eval_quasigroup: length must be n-1");
  const QuatWord sums = partial_sums(shape, x);
  Quat v = sums[0];
  for (std::size_t j = 1; j < sums.size(); ++j) v = star(v, sums[j]);
  return v;
}

inline bool mds_contains(const QuasigroupShape& shape, const QuatWord& w) {
  if (w.size() != shape.n)
    throw std::invalid_argument("mds_contains: length must be n");
  for (Quat v : w)
    if (v > 3) throw std::invalid_argument("mds_contains: symbol out of range");
  QuatWord prefix(w.begin(), w.end() - 1);
  return eval_quasigroup(shape, prefix) == w.back();
}

struct MdsCode {
  QuasigroupShape shape;
  std::vector<QuatWord> words;  // sorted, duplicate-free

  std::size_t length() const { return shape.n; }
  std::size_t size() const { return words.size(); }

  bool contains(const QuatWord& w) const {
    return std::binary_search(words.begin(), words.end(), w);
  }

  std::optional<std::size_t> index_of(const QuatWord& w) const {
    auto it = std::lower_bound(words.begin(), words.end(), w);
    if (it != words.end() && *it == w)
      return static_cast<std::size_t>(it - words.begin());
    return std::nullopt;
  }

  friend bool operator==(const MdsCode&, const MdsCode&) = default;
};

namespace detail {

inline void check_enumeration_budget(const char* what, std::uint64_t size_log2,
                                     std::uint64_t length,
                                     std::uint64_t budget_bytes) {
  if (size_log2 >= 40)
    throw budget_error(std::string(what) +
                       ": enumeration size out of supported range");
  const std::uint64_t bytes = (std::uint64_t{1} << size_log2) * length;
  if (bytes > budget_bytes)
    throw budget_error(std::string(what) + ": estimated " +
                       std::to_string(bytes) + " bytes exceeds budget of " +
                       std::to_string(budget_bytes) + " bytes");
}

// Lexicographic odometer over E4^k; returns false after the last word.
inline bool next_quat_word(QuatWord& x) {
  for (std::size_t i = x.size(); i-- > 0;) {
    if (x[i] < 3) {
      ++x[i];
      std::fill(x.begin() + static_cast<std::ptrdiff_t>(i) + 1, x.end(), 0);
      return true;
    }
  }
  return false;
}

}  // namespace detail

inline MdsCode mds_enumerate(
    const QuasigroupShape& shape,
    std::uint64_t budget_bytes = kDefaultEnumerationBudget) {
  detail::check_enumeration_budget("mds_enumerate", 2 * (shape.n - 1), shape.n,
                                   budget_bytes);
  std::vector<QuatWord> words;
  words.reserve(std::size_t{1} << (2 * (shape.n - 1)));
  QuatWord x(shape.n - 1, 0);
  do {
    QuatWord w = x;
    w.push_back(eval_quasigroup(shape, x));
    words.push_back(std::move(w));
  } while (detail::next_quat_word(x));
  return MdsCode{shape, std::move(words)};
}

// Per-coordinate permutation assignment making the MDS code propelinear:
// for a coordinate p in block j with block sum S_j,
//   sigma_{x,p}(alpha) = (alpha * S_j) (+) S_j (+) x_p,
// and for the last coordinate sigma_{x,n}(alpha) = alpha * f(x).
// Each component maps 0 to the corresponding symbol of x.
inline MultiPerm sigma_for_codeword(const QuasigroupShape& shape,
                                    const QuatWord& x) {
  if (!mds_contains(shape, x))
    throw std::invalid_argument("sigma_for_codeword: not a codeword");
  const QuatWord sums = partial_sums(shape, x);
  MultiPerm sigma;
  sigma.perms.reserve(shape.n);
  for (std::size_t p = 0; p + 1 < shape.n; ++p) {
    const Quat s = sums[shape.block_of(p)];
    PermE4 perm;
    for (Quat a = 0; a < 4; ++a)
      perm.img[a] = oplus(oplus(star(a, s), s), x[p]);
    sigma.perms.push_back(perm);
  }
  sigma.perms.push_back(PermE4::star_translation(x.back()));
  return sigma;
}

// Membership in Ker(M) = {a : a (+) M = M}: all block sums lie in {0,2},
// or, when m is even, all block sums lie in {1,3}.
inline bool mds_kernel_characterize(const QuasigroupShape& shape,
                                    const QuatWord& w) {
  if (!mds_contains(shape, w))
    throw std::invalid_argument("mds_kernel_characterize: not a codeword");
  const QuatWord sums = partial_sums(shape, w);
  bool all_even = true;
  bool all_odd = true;
  for (Quat s : sums) {
    if (s != 0 && s != 2) all_even = false;
    if (s != 1 && s != 3) all_odd = false;
  }
  if (all_even) return true;
  return (shape.m() % 2 == 0) && all_odd;
}

inline std::vector<QuatWord> kernel_bruteforce_quaternary(const MdsCode& code) {
  std::vector<QuatWord> kernel;
  for (const QuatWord& a : code.words) {
    bool closed = true;
    for (const QuatWord& c : code.words) {
      if (!code.contains(oplus_words(a, c))) {
        closed = false;
        break;
      }
    }
    if (closed) kernel.push_back(a);
  }
  return kernel;
}

// An MDS code together with one MultiPerm per codeword.
struct IsotopicMdsStructure {
  MdsCode code;
  std::vector<MultiPerm> sigmas;  // aligned with code.words

  const MultiPerm& sigma_of(const QuatWord& x) const {
    const auto idx = code.index_of(x);
    if (!idx) throw std::invalid_argument("sigma_of: not a codeword");
    return sigmas[*idx];
  }
};

enum class QuatLaw { star, oplus };

// Length-m seed structure: the code {(x, x_1 law ... law x_{m-1})} with
// sigma_{x,j}(alpha) = alpha law x_j and, in the last coordinate,
// alpha law (x_1 law ... law x_{m-1}).
inline IsotopicMdsStructure base_structure(
    std::size_t m, QuatLaw law,
    std::uint64_t budget_bytes = kDefaultEnumerationBudget) {
  if (m < 2) throw std::invalid_argument("base_structure: m must be >= 2");
  detail::check_enumeration_budget("base_structure", 2 * (m - 1), m,
                                   budget_bytes);
  std::vector<std::size_t> cuts;
  if (law == QuatLaw::star)
    for (std::size_t c = 1; c + 2 <= m; ++c) cuts.push_back(c);
  QuasigroupShape shape(m, std::move(cuts));

  const auto apply = [law](Quat a, Quat b) {
    return law == QuatLaw::star ? star(a, b) : oplus(a, b);
  };
  IsotopicMdsStructure out{MdsCode{shape, {}}, {}};
  QuatWord x(m - 1, 0);
  do {
    Quat fold = 0;
    for (Quat v : x) fold = apply(fold, v);
    QuatWord w = x;
    w.push_back(fold);
    MultiPerm sigma;
    sigma.perms.reserve(m);
    for (Quat v : x) {
      PermE4 p;
      for (Quat a = 0; a < 4; ++a) p.img[a] = apply(a, v);
      sigma.perms.push_back(p);
    }
    PermE4 last;
    for (Quat a = 0; a < 4; ++a) last.img[a] = apply(a, fold);
    sigma.perms.push_back(last);
    out.code.words.push_back(std::move(w));
    out.sigmas.push_back(std::move(sigma));
  } while (detail::next_quat_word(x));
  return out;
}

// Replaces coordinate i (1-based, not the last) of an isotopic structure by
// r coordinates whose (+) sum reproduces the old symbol.  The old
// permutation sigma_{x,i} splits into tau components via tau_multi; every
// other coordinate keeps its permutation.  Output length n + r - 1, size
// 4^{n+r-2}, and the shape gains r - 1 positions in the block containing i.
inline IsotopicMdsStructure expand_coordinate(
    const IsotopicMdsStructure& s, std::size_t i, std::size_t r,
    std::uint64_t budget_bytes = kDefaultEnumerationBudget) {
  const std::size_t n = s.code.length();
  if (i < 1 || i >= n)
    throw std::invalid_argument(
        "expand_coordinate: i must lie in 1..n-1 (1-based)");
  if (r < 1) throw std::invalid_argument("expand_coordinate: r must be >= 1");
  if (s.sigmas.size() != s.code.words.size())
    throw std::invalid_argument("expand_coordinate: malformed structure");
  const std::size_t new_n = n + r - 1;
  detail::check_enumeration_budget("expand_coordinate", 2 * (new_n - 1), new_n,
                                   budget_bytes);

  std::vector<std::size_t> new_cuts;
  for (std::size_t c : s.code.shape.cuts)
    new_cuts.push_back(c < i ? c : c + r - 1);
  QuasigroupShape new_shape(new_n, std::move(new_cuts));

  std::vector<std::pair<QuatWord, MultiPerm>> rows;
  rows.reserve(s.code.size() << (2 * (r - 1)));
  for (std::size_t wi = 0; wi < s.code.words.size(); ++wi) {
    const QuatWord& x = s.code.words[wi];
    const MultiPerm& sigma = s.sigmas[wi];
    QuatWord yfree(r - 1, 0);
    do {
      QuatWord y = yfree;
      y.push_back(oplus(oplus_fold(yfree), x[i - 1]));
      const std::vector<PermE4> taus = tau_multi(sigma.perms[i - 1], y);
      QuatWord w;
      w.reserve(new_n);
      w.insert(w.end(), x.begin(), x.begin() + static_cast<std::ptrdiff_t>(i) - 1);
      w.insert(w.end(), y.begin(), y.end());
      w.insert(w.end(), x.begin() + static_cast<std::ptrdiff_t>(i), x.end());
      MultiPerm mp;
      mp.perms.reserve(new_n);
      mp.perms.insert(mp.perms.end(), sigma.perms.begin(),
                      sigma.perms.begin() + static_cast<std::ptrdiff_t>(i) - 1);
      mp.perms.insert(mp.perms.end(), taus.begin(), taus.end());
      mp.perms.insert(mp.perms.end(),
                      sigma.perms.begin() + static_cast<std::ptrdiff_t>(i),
                      sigma.perms.end());
      rows.emplace_back(std::move(w), std::move(mp));
    } while (detail::next_quat_word(yfree));
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  IsotopicMdsStructure out{MdsCode{new_shape, {}}, {}};
  out.code.words.reserve(rows.size());
  out.sigmas.reserve(rows.size());
  for (auto& [w, mp] : rows) {
    out.code.words.push_back(std::move(w));
    out.sigmas.push_back(std::move(mp));
  }
  return out;
}

// Materializes the closed-form assignment for a shape.
inline IsotopicMdsStructure shape_structure(
    const QuasigroupShape& shape,
    std::uint64_t budget_bytes = kDefaultEnumerationBudget) {
  IsotopicMdsStructure out{mds_enumerate(shape, budget_bytes), {}};
  out.sigmas.reserve(out.code.size());
  for (const QuatWord& w : out.code.words)
    out.sigmas.push_back(sigma_for_codeword(shape, w));
  return out;
}

namespace detail {

inline std::string shape_to_token(const QuasigroupShape& shape) {
  std::string s = std::to_string(shape.n) + ":";
  for (std::size_t j = 0; j < shape.cuts.size(); ++j) {
    if (j) s.push_back(',');
    s += std::to_string(shape.cuts[j]);
  }
  return s;
}

inline QuasigroupShape shape_from_token(const std::string& token) {
  const auto colon = token.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("shape: expected <n>:<cuts>");
  std::size_t used = 0;
  std::size_t n = 0;
  try {
    n = std::stoull(token.substr(0, colon), &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("shape: malformed n");
  }
  if (used != colon) throw std::invalid_argument("shape: malformed n");
  std::vector<std::size_t> cuts;
  std::string rest = token.substr(colon + 1);
  if (!rest.empty() && rest != "none") {
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const auto comma = rest.find(',', pos);
      const std::string item =
          rest.substr(pos, comma == std::string::npos ? std::string::npos
                                                      : comma - pos);
      try {
        cuts.push_back(std::stoull(item, &used));
      } catch (const std::exception&) {
        throw std::invalid_argument("shape: malformed cut");
      }
      if (used != item.size())
        throw std::invalid_argument("shape: malformed cut");
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  return QuasigroupShape(n, std::move(cuts));
}

}  // namespace detail

// QCODE v1: header "QCODE v1 length=<L> size=<S> shape=<n>:<i_1,...>",
// then S codewords over '0'..'3', one per line, sorted lexicographically.
inline void write_qcode(std::ostream& os, const MdsCode& code) {
  os << "QCODE v1 length=" << code.length() << " size=" << code.size()
     << " shape=" << detail::shape_to_token(code.shape) << "\n";
  for (const QuatWord& w : code.words) os << to_string(w) << "\n";
}

inline MdsCode read_qcode(std::istream& is) {
  std::string line;
  if (!std::getline(is, line))
    throw std::invalid_argument("QCODE: missing header");
  const auto tok = detail::split_ws(line);
  if (tok.size() != 5 || tok[0] != "QCODE" || tok[1] != "v1")
    throw std::invalid_argument("QCODE: malformed header");
  const std::uint64_t length = detail::parse_header_field(tok[2], "length=");
  const std::uint64_t size = detail::parse_header_field(tok[3], "size=");
  if (tok[4].compare(0, 6, "shape=") != 0)
    throw std::invalid_argument("QCODE: malformed header");
  QuasigroupShape shape = detail::shape_from_token(tok[4].substr(6));
  if (shape.n != length)
    throw std::invalid_argument("QCODE: length does not match shape");
  if (size != (std::uint64_t{1} << (2 * (length - 1))))
    throw std::invalid_argument("QCODE: size does not match shape");
  std::vector<QuatWord> words;
  words.reserve(size);
  for (std::uint64_t i = 0; i < size; ++i) {
    if (!std::getline(is, line))
      throw std::invalid_argument("QCODE: truncated file");
    if (line.size() != length)
      throw std::invalid_argument("QCODE: wrong word length");
    QuatWord w = parse_quat_word(line);
    if (!mds_contains(shape, w))
      throw std::invalid_argument("QCODE: word outside the declared code");
    if (!words.empty() && !(words.back() < w))
      throw std::invalid_argument("QCODE: words not sorted");
    words.push_back(std::move(w));
  }
  if (std::getline(is, line))
    throw std::invalid_argument("QCODE: trailing content");
  return MdsCode{std::move(shape), std::move(words)};
}

// QSTRUCT v1: header "QSTRUCT v1", then per codeword
//   <word> | <4L digits>
// where the digit block concatenates the images of 0,1,2,3 under each of
// the L coordinate permutations.
inline void write_qstruct(std::ostream& os, const IsotopicMdsStructure& s) {
  os << "QSTRUCT v1\n";
  for (std::size_t i = 0; i < s.code.words.size(); ++i) {
    os << to_string(s.code.words[i]) << " |";
    std::string digits;
    digits.reserve(4 * s.code.length());
    for (const PermE4& p : s.sigmas[i].perms)
      for (Quat a = 0; a < 4; ++a)
        digits.push_back(static_cast<char>('0' + p(a)));
    os << " " << digits << "\n";
  }
}

struct QuatAssignmentList {
  std::vector<QuatWord> words;
  std::vector<MultiPerm> sigmas;

  friend bool operator==(const QuatAssignmentList&,
                         const QuatAssignmentList&) = default;
};

inline QuatAssignmentList read_qstruct(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "QSTRUCT v1")
    throw std::invalid_argument("QSTRUCT: malformed header");
  QuatAssignmentList out;
  std::size_t length = 0;
  while (std::getline(is, line)) {
    const auto tok = detail::split_ws(line);
    if (tok.size() != 3 || tok[1] != "|")
      throw std::invalid_argument("QSTRUCT: malformed line");
    QuatWord w = parse_quat_word(tok[0]);
    if (out.words.empty())
      length = w.size();
    else if (w.size() != length || !(out.words.back() < w))
      throw std::invalid_argument("QSTRUCT: words not sorted");
    if (tok[2].size() != 4 * length)
      throw std::invalid_argument("QSTRUCT: wrong permutation block");
    MultiPerm mp;
    mp.perms.reserve(length);
    for (std::size_t i = 0; i < length; ++i) {
      PermE4 p;
      for (Quat a = 0; a < 4; ++a) {
        const char c = tok[2][4 * i + a];
        if (c < '0' || c > '3')
          throw std::invalid_argument("QSTRUCT: invalid digit");
        p.img[a] = static_cast<Quat>(c - '0');
      }
      if (!p.is_permutation())
        throw std::invalid_argument("QSTRUCT: not a permutation");
      if (p(0) != w[i])
        throw std::invalid_argument("QSTRUCT: permutation must map 0 to x_i");
      mp.perms.push_back(p);
    }
    out.words.push_back(std::move(w));
    out.sigmas.push_back(std::move(mp));
  }
  return out;
}

}  // namespace propelin
