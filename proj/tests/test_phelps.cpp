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

#include <algorithm>
#include <bit>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "propelin/bounds.hpp"
#include "propelin/phelps.hpp"

using namespace propelin;

namespace {

BinaryWord word16(std::uint32_t v) {
  BinaryWord w(16);
  for (std::size_t i = 0; i < 16; ++i) w.set(i, (v >> (15 - i)) & 1u);
  return w;
}

}  // namespace

TEST_CASE("coset units", "[phelps]") {
  CHECK(coset_unit(0) == 0b0001);
  CHECK(coset_unit(1) == 0b1000);
  CHECK(coset_unit(2) == 0b0100);
  CHECK(coset_unit(3) == 0b0010);
}

TEST_CASE("coset blocks", "[phelps]") {
  using P = std::array<std::uint8_t, 2>;
  CHECK(block_coset({0, 0}) == P{0x0, 0xF});
  CHECK(block_coset({0, 1}) == P{0x1, 0xE});
  CHECK(block_coset({1, 0}) == P{0x6, 0x9});
  CHECK(block_coset({1, 1}) == P{0x7, 0x8});
  CHECK(block_coset({2, 0}) == P{0x5, 0xA});
  CHECK(block_coset({2, 1}) == P{0x4, 0xB});
  CHECK(block_coset({3, 0}) == P{0x3, 0xC});
  CHECK(block_coset({3, 1}) == P{0x2, 0xD});
}

TEST_CASE("nibble classification", "[phelps]") {
  for (std::uint8_t w = 0; w < 16; ++w) {
    const CosetLabel label = classify_nibble(w);
    const auto pair = block_coset(label);
    CHECK((pair[0] == w || pair[1] == w));
    CHECK(label.r == (std::popcount(unsigned{w}) & 1));
  }
  CHECK(classify_nibble(0x6) == CosetLabel{1, 0});
  CHECK(classify_nibble(0x7) == CosetLabel{1, 1});
  CHECK(classify_nibble(0xE) == CosetLabel{0, 1});
  CHECK_THROWS_AS(classify_nibble(16), std::invalid_argument);
}

TEST_CASE("coset translation identity", "[phelps]") {
  // b + C_a^r = C_{a (+) a'}^{r + r'} for b in C_{a'}^{r'}.
  for (std::uint8_t b = 0; b < 16; ++b) {
    const CosetLabel lb = classify_nibble(b);
    for (Quat a = 0; a < 4; ++a)
      for (std::uint8_t r = 0; r < 2; ++r) {
        const CosetLabel expect{oplus(a, lb.a),
                                static_cast<std::uint8_t>((r + lb.r) & 1)};
        for (std::uint8_t w : block_coset({a, r}))
          CHECK(classify_nibble(b ^ w) == expect);
      }
  }
}

TEST_CASE("coordinate permutations", "[phelps]") {
  const CoordPerm id = CoordPerm::identity(4);
  CHECK(id.is_permutation());
  CHECK(id.is_involution());

  CoordPerm cycle;
  cycle.img = {1, 2, 3, 0};
  CHECK(cycle.is_permutation());
  CHECK_FALSE(cycle.is_involution());
  CHECK(coord_compose(cycle, coord_inverse(cycle)) == id);
  CHECK(coord_compose(coord_inverse(cycle), cycle) == id);

  CoordPerm bad;
  bad.img = {0, 0, 1, 2};
  CHECK_FALSE(bad.is_permutation());

  const BinaryWord w = BinaryWord::from_string("1100");
  CHECK(permute(cycle, w).to_string() == "0110");
  CHECK(permute(id, w) == w);
  CHECK_THROWS_AS(permute(cycle, BinaryWord(5)), std::invalid_argument);

  CoordPerm swap01;
  swap01.img = {1, 0, 2, 3};
  CHECK(coord_compose(cycle, swap01).img == std::vector<std::uint32_t>{2, 1, 3, 0});
  // (p o q)(w) = p(q(w))
  CHECK(permute(coord_compose(cycle, swap01), w) ==
        permute(cycle, permute(swap01, w)));
}

TEST_CASE("symbol permutations induce coordinate permutations", "[phelps]") {
  CHECK(sigma_to_pi(PermE4::identity()) == CoordPerm::identity(4));
  CHECK(sigma_to_pi(PermE4::star_translation(1)).img ==
        std::vector<std::uint32_t>{2, 1, 0, 3});

  // The kernel of sigma -> pi is exactly the four (+)-translations.
  std::size_t trivial = 0;
  for (const PermE4& s : all_perms_e4())
    if (sigma_to_pi(s) == CoordPerm::identity(4)) ++trivial;
  CHECK(trivial == 4);
  for (Quat b = 0; b < 4; ++b)
    CHECK(sigma_to_pi(PermE4::oplus_translation(b)) == CoordPerm::identity(4));

  // Homomorphism over all pairs.
  for (const PermE4& s : all_perms_e4())
    for (const PermE4& t : all_perms_e4())
      CHECK(sigma_to_pi(perm_compose(s, t)) ==
            coord_compose(sigma_to_pi(s), sigma_to_pi(t)));

  // Defining identity: C_{sigma(a)}^r + e_{sigma(0)} + e_0 = pi(C_a^r).
  for (const PermE4& s : all_perms_e4()) {
    const CoordPerm& pi = sigma_to_pi(s);
    REQUIRE(pi.length() == 4);
    CHECK(pi.img[3] == 3);
    const std::array<std::uint8_t, 4> img{
        static_cast<std::uint8_t>(pi.img[0]),
        static_cast<std::uint8_t>(pi.img[1]),
        static_cast<std::uint8_t>(pi.img[2]),
        static_cast<std::uint8_t>(pi.img[3])};
    const std::uint8_t offset = coset_unit(s(0)) ^ coset_unit(0);
    for (Quat a = 0; a < 4; ++a)
      for (std::uint8_t r = 0; r < 2; ++r) {
        auto lhs = block_coset({s(a), r});
        lhs[0] ^= offset;
        lhs[1] ^= offset;
        if (lhs[0] > lhs[1]) std::swap(lhs[0], lhs[1]);
        auto rhs = block_coset({a, r});
        rhs[0] = propelin::detail::permute_nibble(img, rhs[0]);
        rhs[1] = propelin::detail::permute_nibble(img, rhs[1]);
        if (rhs[0] > rhs[1]) std::swap(rhs[0], rhs[1]);
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("nibble access", "[phelps]") {
  BinaryWord w(16);
  set_nibble(w, 0, 0x6);
  set_nibble(w, 2, 0xD);
  CHECK(w.to_string() == "0110000011010000");
  CHECK(get_nibble(w, 0) == 0x6);
  CHECK(get_nibble(w, 1) == 0x0);
  CHECK(get_nibble(w, 2) == 0xD);
  set_nibble(w, 2, 0x0);
  CHECK(get_nibble(w, 2) == 0x0);
}

TEST_CASE("code parameters", "[phelps]") {
  const PhelpsCode c4(4, {1, 2});
  CHECK(c4.length() == 16);
  CHECK(c4.size_log2() == 11);
  const PhelpsCode c8(8, {});
  CHECK(c8.length() == 32);
  CHECK(c8.size_log2() == 26);
  const PhelpsCode c16(16, {4, 8});
  CHECK(c16.length() == 64);
  CHECK(c16.size_log2() == 57);
  CHECK_THROWS_AS(PhelpsCode(6, {}), std::invalid_argument);
}

TEST_CASE("labels parities and membership", "[phelps]") {
  const PhelpsCode code(4, {1, 2});
  const BinaryWord w = BinaryWord::from_string("1111000000000110");
  CHECK(phelps_labels(code, w) == parse_quat_word("0001"));
  CHECK(phelps_parities(code, w) == BinaryWord::from_string("0000"));
  CHECK(phelps_contains(code, BinaryWord::from_string("1111000000000000")));
  CHECK(phelps_contains(code, BinaryWord::from_string("0110000000000110")));
  // Parity word 0001 is not in the extended Hamming code of length 4.
  CHECK_FALSE(phelps_contains(code, BinaryWord::from_string("1111000000000001")));
  // Labels (1,0,0,0) violate the quasigroup equation.
  CHECK_FALSE(phelps_contains(code, BinaryWord::from_string("0110000000000000")));
  CHECK_THROWS_AS(phelps_contains(code, BinaryWord(8)), std::invalid_argument);
}

TEST_CASE("enumeration agrees with membership", "[phelps]") {
  for (const auto& cuts : all_cut_lists(4)) {
    const PhelpsCode code(4, cuts);
    const ExplicitCode words = phelps_enumerate(code);
    REQUIRE(words.size() == 2048);
    CHECK(std::is_sorted(words.words.begin(), words.words.end()));
    for (std::uint32_t v = 0; v < (1u << 16); ++v) {
      const BinaryWord w = word16(v);
      if (phelps_contains(code, w) != words.contains(w)) {
        FAIL("membership mismatch at " << w.to_string());
      }
    }
  }
}

TEST_CASE("enumeration budget", "[phelps]") {
  CHECK_THROWS_AS(phelps_enumerate(PhelpsCode(8, {})), budget_error);
  CHECK_THROWS_AS(phelps_enumerate(PhelpsCode(4, {1, 2}), 100), budget_error);
  CHECK(phelps_enumerate(PhelpsCode(4, {1, 2}), 100, true).size() == 2048);
}

TEST_CASE("codeword permutations", "[phelps]") {
  for (const auto& cuts : all_cut_lists(4)) {
    const PhelpsCode code(4, cuts);
    const ExplicitCode words = phelps_enumerate(code);
    CHECK(pi_for_codeword(code, BinaryWord(16)) == CoordPerm::identity(16));
    for (const BinaryWord& w : words.words) {
      const CoordPerm pi = pi_for_codeword(code, w);
      REQUIRE(pi.length() == 16);
      CHECK(pi.is_permutation());
      CHECK(pi.is_involution());
      for (std::size_t i = 0; i < 16; ++i) CHECK(pi.img[i] / 4 == i / 4);
    }
  }
  CHECK_THROWS_AS(
      pi_for_codeword(PhelpsCode(4, {1, 2}),
                      BinaryWord::from_string("0110000000000000")),
      std::invalid_argument);
}

TEST_CASE("star action", "[phelps]") {
  const PhelpsCode code(4, {1, 2});
  const ExplicitCode words = phelps_enumerate(code);
  const BinaryWord zero(16);
  for (std::size_t i = 0; i < words.size(); i += 37) {
    const BinaryWord& x = words.words[i];
    CHECK(star_apply(code, x, zero) == x);
    CHECK(star_apply(code, zero, x) == x);
    for (std::size_t j = 0; j < words.size(); j += 191)
      CHECK(phelps_contains(code, star_apply(code, x, words.words[j])));
  }
  CHECK_THROWS_AS(star_apply(code, zero, BinaryWord(8)),
                  std::invalid_argument);
}

TEST_CASE("kernel characterization", "[phelps]") {
  auto kernel_count = [](const PhelpsCode& code) {
    std::size_t k = 0;
    for (const BinaryWord& w : phelps_enumerate(code).words)
      if (phelps_kernel_contains(code, w)) ++k;
    return k;
  };
  CHECK(kernel_count(PhelpsCode(4, {1, 2})) == 512);
  CHECK(kernel_count(PhelpsCode(4, {2})) == 512);
  CHECK(kernel_count(PhelpsCode(4, {})) == 2048);

  const PhelpsCode code(4, {2});
  const ExplicitCode words = phelps_enumerate(code);
  std::vector<BinaryWord> kernel, rest;
  for (const BinaryWord& w : words.words)
    (phelps_kernel_contains(code, w) ? kernel : rest).push_back(w);
  // Kernel words translate the code onto itself.
  for (std::size_t i = 0; i < kernel.size(); i += 17)
    for (const BinaryWord& y : words.words)
      CHECK(words.contains(kernel[i] ^ y));
  // Non-kernel words do not.
  for (std::size_t i = 0; i < rest.size(); i += 13) {
    bool translates = true;
    for (const BinaryWord& y : words.words)
      if (!words.contains(rest[i] ^ y)) {
        translates = false;
        break;
      }
    CHECK_FALSE(translates);
  }
  CHECK_THROWS_AS(
      phelps_kernel_contains(code, BinaryWord::from_string("0110000000000000")),
      std::invalid_argument);
}

TEST_CASE("PSTRUCT round trip", "[phelps]") {
  const PhelpsCode code(4, {1, 2});
  const ExplicitCode words = phelps_enumerate(code);
  std::ostringstream os;
  write_pstruct(os, code, words);
  const std::string text = os.str();
  CHECK(text.substr(0, 21) == "PSTRUCT v1 length=16\n");
  std::istringstream is(text);
  const BinaryAssignmentList list = read_pstruct(is);
  REQUIRE(list.words.size() == words.size());
  CHECK(list.words == words.words);
  for (std::size_t i = 0; i < words.size(); ++i)
    CHECK(list.perms[i] == pi_for_codeword(code, words.words[i]));
}

TEST_CASE("PSTRUCT rejects malformed input", "[phelps]") {
  auto reject = [](const std::string& text) {
    std::istringstream is(text);
    CHECK_THROWS_AS(read_pstruct(is), std::invalid_argument);
  };
  const std::string head = "PSTRUCT v1 length=4\n";
  reject("");
  reject("PSTRUCT v2 length=4\n");
  reject("PSTRUCT v1\n");
  reject(head + "0000 1 2 3 4\n");        // missing separator
  reject(head + "000 | 1 2 3 4\n");       // wrong word length
  reject(head + "0000 | 1 2 3\n");        // image list too short
  reject(head + "0000 | 1 2 3 5\n");      // image out of range
  reject(head + "0000 | 0 1 2 3\n");      // images are 1-based
  reject(head + "0000 | 1 1 2 3\n");      // not a permutation
  reject(head + "0000 | 1 2 x 4\n");      // malformed image
  reject(head + "0011 | 1 2 3 4\n0000 | 1 2 3 4\n");  // unsorted
}
