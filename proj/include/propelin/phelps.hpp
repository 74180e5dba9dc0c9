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

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "propelin/binary.hpp"
#include "propelin/errors.hpp"
#include "propelin/mds.hpp"
#include "propelin/quat.hpp"

namespace propelin {

// The 16 binary words of length 4 split into eight cosets
//   C_a^r = C_0 + (1+r) e_0 + e_a,   a in E4, r in {0,1},
// of C_0 = {0000, 1111}, where e_a (a = 1,2,3) is the indicator of
// coordinate a and e_0 the indicator of coordinate 4.  Every word of
// C_a^r has weight parity r.  Nibbles store coordinate p (1-based) at
// bit 4-p, so 0b1000 is the indicator of coordinate 1.
struct CosetLabel {
  Quat a = 0;
  std::uint8_t r = 0;

  friend bool operator==(const CosetLabel&, const CosetLabel&) = default;
};

constexpr std::uint8_t coset_unit(Quat a) {
  return a == 0 ? std::uint8_t{1} : static_cast<std::uint8_t>(1u << (4 - a));
}

constexpr std::array<std::uint8_t, 2> block_coset(CosetLabel label) {
  if (label.a > 3 || label.r > 1)
    throw std::invalid_argument("block_coset: bad label");
  const std::uint8_t offset = static_cast<std::uint8_t>(
      coset_unit(label.a) ^ (label.r == 0 ? coset_unit(0) : 0));
  std::uint8_t u = offset;
  std::uint8_t v = static_cast<std::uint8_t>(0xF ^ offset);
  if (u > v) std::swap(u, v);
  return {u, v};
}

namespace detail {

inline const std::array<CosetLabel, 16>& coset_classify_table() {
  static const std::array<CosetLabel, 16> table = [] {
    std::array<CosetLabel, 16> t{};
    std::array<bool, 16> seen{};
    for (Quat a = 0; a < 4; ++a)
      for (std::uint8_t r = 0; r < 2; ++r)
        for (std::uint8_t w : block_coset({a, r})) {
          if (seen[w])
            throw std::logic_error("coset table: labels do not partition");
          seen[w] = true;
          t[w] = CosetLabel{a, r};
        }
    for (bool s : seen)
      if (!s) throw std::logic_error("coset table: labels do not cover");
    return t;
  }();
  return table;
}

}  // namespace detail

// Unique label with w in C_a^r; r is the weight parity of w.
inline CosetLabel classify_nibble(std::uint8_t w) {
  if (w > 0xF) throw std::invalid_argument("classify_nibble: not a nibble");
  return detail::coset_classify_table()[w];
}

// Permutation of coordinates 0..L-1; img[i] is the image of coordinate i.
// Acting on words, (pi(w))_{img[i]} = w_i.
struct CoordPerm {
  std::vector<std::uint32_t> img;

  static CoordPerm identity(std::size_t length) {
    CoordPerm p;
    p.img.resize(length);
    for (std::size_t i = 0; i < length; ++i)
      p.img[i] = static_cast<std::uint32_t>(i);
    return p;
  }

  std::size_t length() const { return img.size(); }

  bool is_permutation() const {
    std::vector<bool> seen(img.size(), false);
    for (std::uint32_t v : img) {
      if (v >= img.size() || seen[v]) return false;
      seen[v] = true;
    }
    return true;
  }

  bool is_involution() const {
    for (std::size_t i = 0; i < img.size(); ++i)
      if (img[img[i]] != i) return false;
    return true;
  }

  friend bool operator==(const CoordPerm&, const CoordPerm&) = default;
  friend auto operator<=>(const CoordPerm&, const CoordPerm&) = default;
};

inline BinaryWord permute(const CoordPerm& p, const BinaryWord& w) {
  if (p.length() != w.length())
    throw std::invalid_argument("permute: length mismatch");
  BinaryWord out(w.length());
  for (std::size_t i = 0; i < w.length(); ++i)
    if (w.get(i)) out.set(p.img[i], true);
  return out;
}

// (p o q)(w) = p(q(w))
inline CoordPerm coord_compose(const CoordPerm& p, const CoordPerm& q) {
  if (p.length() != q.length())
    throw std::invalid_argument("coord_compose: length mismatch");
  CoordPerm r;
  r.img.resize(p.length());
  for (std::size_t i = 0; i < p.length(); ++i) r.img[i] = p.img[q.img[i]];
  return r;
}

inline CoordPerm coord_inverse(const CoordPerm& p) {
  CoordPerm r;
  r.img.resize(p.length());
  for (std::size_t i = 0; i < p.length(); ++i)
    r.img[p.img[i]] = static_cast<std::uint32_t>(i);
  return r;
}

namespace detail {

inline std::uint8_t permute_nibble(const std::array<std::uint8_t, 4>& img,
                                   std::uint8_t w) {
  std::uint8_t out = 0;
  for (int p = 0; p < 4; ++p)
    if (w & (1u << (3 - p))) out |= static_cast<std::uint8_t>(1u << (3 - img[p]));
  return out;
}

}  // namespace detail

// The unique coordinate permutation pi of {1,2,3,4} fixing position 4 with
//   C_{sigma(a)}^r + e_{sigma(0)} + e_0 = pi(C_a^r)  for all a, r.
// Found by exhaustive search over the six candidates and memoized for all
// 24 permutations of E4.  Composition is preserved: the map sigma -> pi is
// a group homomorphism whose kernel is the four (+)-translations.
inline const CoordPerm& sigma_to_pi(const PermE4& sigma) {
  static const std::array<CoordPerm, 24> table = [] {
    std::array<CoordPerm, 24> t;
    // Candidates: permutations of positions {0,1,2} extended by 3 -> 3.
    std::array<std::array<std::uint8_t, 4>, 6> candidates{};
    {
      std::array<std::uint8_t, 3> head{0, 1, 2};
      std::size_t k = 0;
      do {
        candidates[k] = {head[0], head[1], head[2], 3};
        ++k;
      } while (std::next_permutation(head.begin(), head.end()));
    }
    for (std::size_t si = 0; si < 24; ++si) {
      const PermE4& s = all_perms_e4()[si];
      const std::uint8_t offset =
          static_cast<std::uint8_t>(coset_unit(s(0)) ^ coset_unit(0));
      const CoordPerm* found = nullptr;
      for (const auto& cand : candidates) {
        bool ok = true;
        for (Quat a = 0; a < 4 && ok; ++a)
          for (std::uint8_t r = 0; r < 2 && ok; ++r) {
            auto lhs = block_coset({s(a), r});
            lhs[0] ^= offset;
            lhs[1] ^= offset;
            if (lhs[0] > lhs[1]) std::swap(lhs[0], lhs[1]);
            auto rhs = block_coset({a, r});
            rhs[0] = detail::permute_nibble(cand, rhs[0]);
            rhs[1] = detail::permute_nibble(cand, rhs[1]);
            if (rhs[0] > rhs[1]) std::swap(rhs[0], rhs[1]);
            ok = lhs == rhs;
          }
        if (ok) {
          if (found)
            throw std::logic_error("sigma_to_pi: candidate not unique");
          t[si].img.assign(cand.begin(), cand.end());
          found = &t[si];
        }
      }
      if (!found) throw std::logic_error("sigma_to_pi: no candidate found");
    }
    return t;
  }();
  return table[perm_index(sigma)];
}

// Concatenated code of length 4n: pick h in the extended Hamming code of
// length n and a in the MDS code of the shape, then fill block i with any
// word of C_{a_i}^{h_i}.  Block i occupies bit positions 4(i-1)+1 .. 4i.
struct PhelpsCode {
  std::size_t n;
  QuasigroupShape shape;
  LinearCode hamming;

  PhelpsCode(std::size_t n_, std::vector<std::size_t> cuts)
      : n(n_), shape(n_, std::move(cuts)), hamming(extended_hamming(n_)) {}

  std::size_t length() const { return 4 * n; }

  // log2 |C| = 4n - log2(n) - 3
  std::size_t size_log2() const {
    return 4 * n - static_cast<std::size_t>(std::countr_zero(n)) - 3;
  }
};

inline std::uint8_t get_nibble(const BinaryWord& w, std::size_t block) {
  std::uint8_t v = 0;
  for (int p = 0; p < 4; ++p)
    if (w.get(4 * block + static_cast<std::size_t>(p)))
      v |= static_cast<std::uint8_t>(1u << (3 - p));
  return v;
}

inline void set_nibble(BinaryWord& w, std::size_t block, std::uint8_t v) {
  for (int p = 0; p < 4; ++p)
    w.set(4 * block + static_cast<std::size_t>(p), (v >> (3 - p)) & 1u);
}

// Per-block coset labels (a_1,...,a_n).
inline QuatWord phelps_labels(const PhelpsCode& code, const BinaryWord& w) {
  if (w.length() != code.length())
    throw std::invalid_argument("phelps_labels: length mismatch");
  QuatWord a(code.n);
  for (std::size_t i = 0; i < code.n; ++i)
    a[i] = classify_nibble(get_nibble(w, i)).a;
  return a;
}

// Per-block weight parities (h_1,...,h_n) as a binary word of length n.
inline BinaryWord phelps_parities(const PhelpsCode& code, const BinaryWord& w) {
  if (w.length() != code.length())
    throw std::invalid_argument("phelps_parities: length mismatch");
  BinaryWord h(code.n);
  for (std::size_t i = 0; i < code.n; ++i)
    h.set(i, classify_nibble(get_nibble(w, i)).r != 0);
  return h;
}

// O(n) membership: classify blocks, then test the parity word against the
// extended Hamming code and the label word against the MDS code.
inline bool phelps_contains(const PhelpsCode& code, const BinaryWord& w) {
  if (w.length() != code.length())
    throw std::invalid_argument("phelps_contains: length mismatch");
  return lin_contains(code.hamming, phelps_parities(code, w)) &&
         mds_contains(code.shape, phelps_labels(code, w));
}

inline ExplicitCode phelps_enumerate(
    const PhelpsCode& code,
    std::uint64_t budget_bytes = kDefaultEnumerationBudget,
    bool force = false) {
  if (code.size_log2() >= 40)
    throw budget_error("phelps_enumerate: enumeration size out of range");
  if (!force)
    detail::check_enumeration_budget("phelps_enumerate", code.size_log2(),
                                     code.length(), budget_bytes);
  const std::vector<BinaryWord> hs = lin_enumerate(code.hamming);
  std::vector<BinaryWord> words;
  words.reserve(std::size_t{1} << code.size_log2());
  QuatWord x(code.n - 1, 0);
  do {
    QuatWord a = x;
    a.push_back(eval_quasigroup(code.shape, x));
    for (const BinaryWord& h : hs) {
      std::array<std::array<std::uint8_t, 2>, 64> pairs;
      for (std::size_t i = 0; i < code.n; ++i)
        pairs[i] = block_coset({a[i], static_cast<std::uint8_t>(h.get(i))});
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << code.n);
           ++mask) {
        BinaryWord w(code.length());
        for (std::size_t i = 0; i < code.n; ++i)
          set_nibble(w, i, pairs[i][(mask >> i) & 1]);
        words.push_back(std::move(w));
      }
    }
  } while (detail::next_quat_word(x));
  ExplicitCode out = ExplicitCode::from_words(code.length(), std::move(words));
  if (out.size() != (std::size_t{1} << code.size_log2()))
    throw std::logic_error("phelps_enumerate: size mismatch");
  return out;
}

// Block-diagonal coordinate permutation of the codeword: block i carries
// sigma_to_pi of the i-th component of the MDS assignment of its labels.
inline CoordPerm pi_for_codeword(const PhelpsCode& code, const BinaryWord& w) {
  if (!phelps_contains(code, w))
    throw std::invalid_argument("pi_for_codeword: not a codeword");
  const QuatWord a = phelps_labels(code, w);
  const MultiPerm sigma = sigma_for_codeword(code.shape, a);
  CoordPerm pi;
  pi.img.resize(code.length());
  for (std::size_t i = 0; i < code.n; ++i) {
    const CoordPerm& block = sigma_to_pi(sigma.perms[i]);
    for (std::size_t p = 0; p < 4; ++p)
      pi.img[4 * i + p] = static_cast<std::uint32_t>(4 * i + block.img[p]);
  }
  return pi;
}

// x * v = x + pi_x(v) for a codeword x and an arbitrary word v.
inline BinaryWord star_apply(const PhelpsCode& code, const BinaryWord& x,
                             const BinaryWord& v) {
  if (v.length() != code.length())
    throw std::invalid_argument("star_apply: length mismatch");
  return x ^ permute(pi_for_codeword(code, x), v);
}

// Kernel membership via the MDS kernel characterization of the labels.
inline bool phelps_kernel_contains(const PhelpsCode& code,
                                   const BinaryWord& w) {
  if (!phelps_contains(code, w))
    throw std::invalid_argument("phelps_kernel_contains: not a codeword");
  return mds_kernel_characterize(code.shape, phelps_labels(code, w));
}

// PSTRUCT v1: header "PSTRUCT v1 length=<4n>", then per codeword
//   <word> | <space-separated 1-based images>
inline void write_pstruct(std::ostream& os, const PhelpsCode& code,
                          const ExplicitCode& words) {
  os << "PSTRUCT v1 length=" << code.length() << "\n";
  for (const BinaryWord& w : words.words) {
    const CoordPerm pi = pi_for_codeword(code, w);
    os << w.to_string() << " |";
    for (std::uint32_t v : pi.img) os << " " << (v + 1);
    os << "\n";
  }
}

struct BinaryAssignmentList {
  std::vector<BinaryWord> words;
  std::vector<CoordPerm> perms;

  friend bool operator==(const BinaryAssignmentList&,
                         const BinaryAssignmentList&) = default;
};

inline BinaryAssignmentList read_pstruct(std::istream& is) {
  std::string line;
  if (!std::getline(is, line))
    throw std::invalid_argument("PSTRUCT: missing header");
  const auto tok = detail::split_ws(line);
  if (tok.size() != 3 || tok[0] != "PSTRUCT" || tok[1] != "v1" ||
      tok[2].compare(0, 7, "length=") != 0)
    throw std::invalid_argument("PSTRUCT: malformed header");
  const std::uint64_t length = detail::parse_header_field(tok[2], "length=");
  BinaryAssignmentList out;
  while (std::getline(is, line)) {
    const auto parts = detail::split_ws(line);
    if (parts.size() != 2 + length || parts[1] != "|")
      throw std::invalid_argument("PSTRUCT: malformed line");
    if (parts[0].size() != length)
      throw std::invalid_argument("PSTRUCT: wrong word length");
    BinaryWord w = BinaryWord::from_string(parts[0]);
    if (!out.words.empty() && !(out.words.back() < w))
      throw std::invalid_argument("PSTRUCT: words not sorted");
    CoordPerm pi;
    pi.img.reserve(length);
    for (std::size_t i = 0; i < length; ++i) {
      std::size_t used = 0;
      std::uint64_t v = 0;
      try {
        v = std::stoull(parts[2 + i], &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("PSTRUCT: malformed image");
      }
      if (used != parts[2 + i].size() || v < 1 || v > length)
        throw std::invalid_argument("PSTRUCT: image out of range");
      pi.img.push_back(static_cast<std::uint32_t>(v - 1));
    }
    if (!pi.is_permutation())
      throw std::invalid_argument("PSTRUCT: not a permutation");
    out.words.push_back(std::move(w));
    out.perms.push_back(std::move(pi));
  }
  return out;
}

}  // namespace propelin
