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
#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace propelin {

// The alphabet E4 = {0,1,2,3} carries two abelian group structures:
//   *    addition modulo 4 (cyclic of order 4),
//   (+)  the Klein four-group law obtained by transporting XOR on
//        GF(2)^2 through the Gray map.
// Elements are stored as plain integers 0..3.
using Quat = std::uint8_t;

// Gray map 0 -> 00, 1 -> 01, 2 -> 11, 3 -> 10.
inline constexpr std::array<std::array<std::uint8_t, 2>, 4> kGrayMap{
    {{0, 0}, {0, 1}, {1, 1}, {1, 0}}};

constexpr std::array<std::uint8_t, 2> gray(Quat a) { return kGrayMap[a]; }

constexpr Quat ungray(std::uint8_t hi, std::uint8_t lo) {
  for (Quat a = 0; a < 4; ++a)
    if (kGrayMap[a][0] == hi && kGrayMap[a][1] == lo) return a;
  return 0;  // unreachable for bits in {0,1}
}

constexpr Quat star(Quat a, Quat b) { return static_cast<Quat>((a + b) & 3); }

constexpr Quat star_inverse(Quat a) { return static_cast<Quat>((4 - a) & 3); }

namespace detail {
constexpr std::array<std::array<Quat, 4>, 4> make_oplus_table() {
  std::array<std::array<Quat, 4>, 4> t{};
  for (Quat a = 0; a < 4; ++a)
    for (Quat b = 0; b < 4; ++b) {
      const auto ga = gray(a);
      const auto gb = gray(b);
      t[a][b] = ungray(ga[0] ^ gb[0], ga[1] ^ gb[1]);
    }
  return t;
}
inline constexpr auto kOplusTable = make_oplus_table();
}  // namespace detail

// Klein law; every element is its own (+)-inverse.
constexpr Quat oplus(Quat a, Quat b) { return detail::kOplusTable[a][b]; }

// A permutation of E4, stored as its image table.
struct PermE4 {
  std::array<Quat, 4> img{0, 1, 2, 3};

  constexpr Quat operator()(Quat a) const { return img[a]; }

  static constexpr PermE4 identity() { return {}; }

  // alpha -> alpha * b
  static constexpr PermE4 star_translation(Quat b) {
    return PermE4{{star(0, b), star(1, b), star(2, b), star(3, b)}};
  }

  // alpha -> alpha (+) b
  static constexpr PermE4 oplus_translation(Quat b) {
    return PermE4{{oplus(0, b), oplus(1, b), oplus(2, b), oplus(3, b)}};
  }

  constexpr bool is_permutation() const {
    unsigned seen = 0;
    for (Quat v : img) {
      if (v > 3) return false;
      seen |= 1u << v;
    }
    return seen == 0xFu;
  }

  constexpr bool is_involution() const {
    for (Quat a = 0; a < 4; ++a)
      if (img[img[a]] != a) return false;
    return true;
  }

  friend constexpr bool operator==(const PermE4&, const PermE4&) = default;
  friend constexpr auto operator<=>(const PermE4&, const PermE4&) = default;
};

// (p o q)(x) = p(q(x))
constexpr PermE4 perm_compose(const PermE4& p, const PermE4& q) {
  PermE4 r;
  for (Quat a = 0; a < 4; ++a) r.img[a] = p(q(a));
  return r;
}

constexpr PermE4 perm_inverse(const PermE4& p) {
  PermE4 r;
  for (Quat a = 0; a < 4; ++a) r.img[p(a)] = a;
  return r;
}

// All 24 permutations of E4, ordered lexicographically by image table.
inline const std::array<PermE4, 24>& all_perms_e4() {
  static const std::array<PermE4, 24> table = [] {
    std::array<PermE4, 24> t{};
    std::array<Quat, 4> v{0, 1, 2, 3};
    std::size_t k = 0;
    do {
      t[k++].img = v;
    } while (std::next_permutation(v.begin(), v.end()));
    return t;
  }();
  return table;
}

// Position of p within all_perms_e4().
inline std::size_t perm_index(const PermE4& p) {
  const auto& all = all_perms_e4();
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i] == p) return i;
  throw std::invalid_argument("perm_index: not a permutation of E4");
}

// Word over E4, one symbol per element.
using QuatWord = std::vector<Quat>;

inline Quat oplus_fold(const QuatWord& w, std::size_t begin, std::size_t end) {
  Quat s = 0;
  for (std::size_t i = begin; i < end; ++i) s = oplus(s, w[i]);
  return s;
}

inline Quat oplus_fold(const QuatWord& w) { return oplus_fold(w, 0, w.size()); }

inline QuatWord oplus_words(const QuatWord& a, const QuatWord& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("oplus_words: length mismatch");
  QuatWord r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = oplus(a[i], b[i]);
  return r;
}

inline std::string to_string(const QuatWord& w) {
  std::string s;
  s.reserve(w.size());
  for (Quat q : w) s.push_back(static_cast<char>('0' + q));
  return s;
}

inline QuatWord parse_quat_word(std::string_view s) {
  QuatWord w;
  w.reserve(s.size());
  for (char c : s) {
    if (c < '0' || c > '3')
      throw std::invalid_argument("quaternary word: invalid digit");
    w.push_back(static_cast<Quat>(c - '0'));
  }
  return w;
}

// A tuple of per-coordinate permutations acting componentwise.
struct MultiPerm {
  std::vector<PermE4> perms;

  std::size_t length() const { return perms.size(); }

  QuatWord operator()(const QuatWord& w) const {
    if (w.size() != perms.size())
      throw std::invalid_argument("MultiPerm: length mismatch");
    QuatWord r(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) r[i] = perms[i](w[i]);
    return r;
  }

  friend bool operator==(const MultiPerm&, const MultiPerm&) = default;
};

inline MultiPerm multi_compose(const MultiPerm& p, const MultiPerm& q) {
  if (p.length() != q.length())
    throw std::invalid_argument("multi_compose: length mismatch");
  MultiPerm r;
  r.perms.reserve(p.length());
  for (std::size_t i = 0; i < p.length(); ++i)
    r.perms.push_back(perm_compose(p.perms[i], q.perms[i]));
  return r;
}

inline MultiPerm multi_inverse(const MultiPerm& p) {
  MultiPerm r;
  r.perms.reserve(p.length());
  for (const PermE4& s : p.perms) r.perms.push_back(perm_inverse(s));
  return r;
}

// Splits one permutation sigma of E4 into r coordinate permutations
//   tau_s(alpha) = sigma(alpha) (+) sigma(0) (+) y_s
// so that tau_1(x_1) (+) ... (+) tau_r(x_r) = sigma(x_1 (+) ... (+) x_r)
// holds for every x in E4^r.  Requires y_1 (+) ... (+) y_r = sigma(0);
// each tau_s is a bijection with tau_s(0) = y_s.
inline std::vector<PermE4> tau_multi(const PermE4& sigma, const QuatWord& y) {
  if (!sigma.is_permutation())
    throw std::invalid_argument("tau_multi: sigma is not a permutation");
  for (Quat v : y)
    if (v > 3) throw std::invalid_argument("tau_multi: symbol out of range");
  if (oplus_fold(y) != sigma(0))
    throw std::invalid_argument(
        "tau_multi: y_1 (+) ... (+) y_r must equal sigma(0)");
  std::vector<PermE4> taus;
  taus.reserve(y.size());
  for (Quat ys : y) {
    PermE4 t;
    for (Quat a = 0; a < 4; ++a)
      t.img[a] = oplus(oplus(sigma(a), sigma(0)), ys);
    taus.push_back(t);
  }
  return taus;
}

}  // namespace propelin
