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

#include <catch2/catch_amalgamated.hpp>

#include "propelin/mds.hpp"
#include "propelin/quat.hpp"

using namespace propelin;

TEST_CASE("gray map fixed points", "[quat]") {
  CHECK(gray(0) == std::array<std::uint8_t, 2>{0, 0});
  CHECK(gray(1) == std::array<std::uint8_t, 2>{0, 1});
  CHECK(gray(2) == std::array<std::uint8_t, 2>{1, 1});
  CHECK(gray(3) == std::array<std::uint8_t, 2>{1, 0});
  for (Quat a = 0; a < 4; ++a) CHECK(ungray(gray(a)[0], gray(a)[1]) == a);
}

TEST_CASE("oplus values and group structure", "[quat]") {
  CHECK(oplus(0, 2) == 2);
  CHECK(oplus(1, 3) == 2);
  CHECK(oplus(2, 2) == 0);
  for (Quat a = 0; a < 4; ++a) {
    CHECK(oplus(a, 0) == a);
    CHECK(oplus(a, a) == 0);  // exponent 2
    for (Quat b = 0; b < 4; ++b) {
      CHECK(oplus(a, b) == oplus(b, a));
      // The Gray map is linear over GF(2), so (+) is XOR on the raw values.
      CHECK(oplus(a, b) == (a ^ b));
    }
  }
}

TEST_CASE("star is cyclic of order four", "[quat]") {
  CHECK(star_inverse(0) == 0);
  CHECK(star_inverse(1) == 3);
  CHECK(star_inverse(2) == 2);
  CHECK(star_inverse(3) == 1);
  Quat acc = 0;
  for (int k = 1; k <= 4; ++k) {
    acc = star(acc, 1);
    CHECK((acc == 0) == (k == 4));
  }
  for (Quat a = 0; a < 4; ++a) CHECK(star(a, star_inverse(a)) == 0);
}

TEST_CASE("every permutation is affine for oplus", "[quat]") {
  // phi(a (+) b) = phi(a) (+) phi(b) (+) phi(0), all 24 x 16 cases.
  for (const PermE4& phi : all_perms_e4())
    for (Quat a = 0; a < 4; ++a)
      for (Quat b = 0; b < 4; ++b)
        CHECK(phi(oplus(a, b)) == oplus(oplus(phi(a), phi(b)), phi(0)));
}

TEST_CASE("oplus translation versus star translation", "[quat]") {
  for (Quat u = 0; u < 4; ++u) {
    CHECK(oplus(0, u) == star(0, u));
    CHECK(oplus(2, u) == star(2, u));
    CHECK(oplus(1, u) == star(1, star_inverse(u)));
    CHECK(oplus(3, u) == star(3, star_inverse(u)));
  }
  // No single element commutes the two laws: for every u' there are u, v
  // with u' (+) (u * v) != u' * u^{-1} * v.
  for (Quat up = 0; up < 4; ++up) {
    bool always = true;
    for (Quat u = 0; u < 4 && always; ++u)
      for (Quat v = 0; v < 4 && always; ++v)
        always = oplus(up, star(u, v)) == star(star(up, star_inverse(u)), v);
    CHECK_FALSE(always);
  }
}

TEST_CASE("permutation predicates and composition", "[quat]") {
  CHECK(PermE4::identity().is_permutation());
  CHECK(PermE4::identity().is_involution());
  CHECK_FALSE(PermE4{{0, 0, 1, 2}}.is_permutation());
  CHECK(PermE4::star_translation(2).is_involution());
  CHECK_FALSE(PermE4::star_translation(1).is_involution());
  for (Quat b = 0; b < 4; ++b)
    CHECK(PermE4::oplus_translation(b).is_involution());

  CHECK(perm_compose(PermE4::star_translation(1),
                     PermE4::star_translation(1)) ==
        PermE4::star_translation(2));
  for (const PermE4& p : all_perms_e4()) {
    CHECK(perm_compose(p, perm_inverse(p)) == PermE4::identity());
    CHECK(perm_compose(perm_inverse(p), p) == PermE4::identity());
  }
  // Composition order: (p o q)(x) = p(q(x)).
  const PermE4 p{{1, 0, 2, 3}};
  const PermE4 q{{2, 1, 0, 3}};
  CHECK(perm_compose(p, q)(0) == p(q(0)));
}

TEST_CASE("permutation table is lexicographic and indexable", "[quat]") {
  const auto& all = all_perms_e4();
  CHECK(all.front() == PermE4::identity());
  for (std::size_t i = 0; i + 1 < all.size(); ++i)
    CHECK(all[i].img < all[i + 1].img);
  for (std::size_t i = 0; i < all.size(); ++i)
    CHECK(perm_index(all[i]) == i);
  CHECK_THROWS_AS(perm_index(PermE4{{0, 0, 1, 2}}), std::invalid_argument);
}

TEST_CASE("quaternary word helpers", "[quat]") {
  const QuatWord w = parse_quat_word("0123");
  CHECK(to_string(w) == "0123");
  CHECK(oplus_fold(w) == 0);  // 0 (+) 1 (+) 2 (+) 3
  CHECK(oplus_fold(w, 1, 3) == oplus(1, 2));
  CHECK(oplus_words(parse_quat_word("13"), parse_quat_word("32")) ==
        parse_quat_word("21"));
  CHECK_THROWS_AS(parse_quat_word("014"), std::invalid_argument);
  CHECK_THROWS_AS(oplus_words(parse_quat_word("1"), parse_quat_word("12")),
                  std::invalid_argument);
}

TEST_CASE("multi permutations act componentwise", "[quat]") {
  MultiPerm a{{PermE4::oplus_translation(1), PermE4::identity(),
               PermE4::identity()}};
  MultiPerm b{{PermE4::identity(), PermE4::identity(),
               PermE4::oplus_translation(2)}};
  const MultiPerm c = multi_compose(a, b);
  CHECK(c.perms[0] == PermE4::oplus_translation(1));
  CHECK(c.perms[1] == PermE4::identity());
  CHECK(c.perms[2] == PermE4::oplus_translation(2));
  CHECK(c(parse_quat_word("000")) == parse_quat_word("102"));
  CHECK(multi_compose(multi_inverse(c), c)(parse_quat_word("213")) ==
        parse_quat_word("213"));
  CHECK_THROWS_AS(multi_compose(a, MultiPerm{{PermE4::identity()}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(a(parse_quat_word("00")), std::invalid_argument);
}

TEST_CASE("tau splitting fixed examples", "[quat]") {
  {
    const auto taus = tau_multi(PermE4::identity(), parse_quat_word("11"));
    REQUIRE(taus.size() == 2);
    CHECK(taus[0] == PermE4::oplus_translation(1));
    CHECK(taus[1] == PermE4::oplus_translation(1));
  }
  {
    const auto taus =
        tau_multi(PermE4::star_translation(2), parse_quat_word("13"));
    REQUIRE(taus.size() == 2);
    CHECK(taus[0] == PermE4{{1, 0, 3, 2}});
    CHECK(taus[0](0) == 1);
    CHECK(taus[1](0) == 3);
  }
  CHECK_THROWS_AS(tau_multi(PermE4::identity(), parse_quat_word("13")),
                  std::invalid_argument);
}

TEST_CASE("tau splitting fold identity", "[quat]") {
  // tau_1(x_1) (+) ... (+) tau_r(x_r) = sigma(x_1 (+) ... (+) x_r),
  // exhaustive over all sigma, all valid y, all x, r <= 3.
  for (const PermE4& sigma : all_perms_e4()) {
    for (std::size_t r = 1; r <= 3; ++r) {
      QuatWord y(r, 0);
      do {
        if (oplus_fold(y) != sigma(0)) continue;
        const auto taus = tau_multi(sigma, y);
        for (std::size_t s = 0; s < r; ++s) {
          CHECK(taus[s].is_permutation());
          CHECK(taus[s](0) == y[s]);
        }
        QuatWord x(r, 0);
        do {
          Quat lhs = 0;
          for (std::size_t s = 0; s < r; ++s) lhs = oplus(lhs, taus[s](x[s]));
          CHECK(lhs == sigma(oplus_fold(x)));
        } while (propelin::detail::next_quat_word(x));
      } while (propelin::detail::next_quat_word(y));
    }
  }
}
