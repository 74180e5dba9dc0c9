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
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "propelin/binary.hpp"
#include "propelin/detail/parallel.hpp"
#include "propelin/errors.hpp"
#include "propelin/mds.hpp"
#include "propelin/phelps.hpp"
#include "propelin/quat.hpp"

namespace propelin {

enum class CheckMode { exhaustive, sampled };

struct CheckOptions {
  CheckMode mode = CheckMode::exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t trials = 10000;
  unsigned threads = 0;     // 0 = hardware concurrency
  bool early_exit = false;  // abort the scan at the first failure
};

struct Counterexample {
  std::string x;
  std::string y;  // "-" for unary failures
  std::string reason;
};

struct VerificationReport {
  bool passed = true;
  std::uint64_t checked = 0;
  CheckMode mode = CheckMode::exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::optional<Counterexample> counterexample;

  std::string to_text() const {
    std::string s = passed ? "RESULT pass\n" : "RESULT fail\n";
    s += "CHECKED " + std::to_string(checked) + "\n";
    if (mode == CheckMode::sampled)
      s += "MODE sampled seed=" + std::to_string(seed) +
           " trials=" + std::to_string(trials) + "\n";
    else
      s += "MODE exhaustive\n";
    if (counterexample)
      s += "COUNTEREXAMPLE " + counterexample->x + " " + counterexample->y +
           " " + counterexample->reason + "\n";
    return s;
  }
};

namespace detail {

struct PairScanOutcome {
  std::uint64_t checked = 0;
  bool found = false;
  std::uint64_t xi = 0;
  std::uint64_t yi = 0;
  const char* reason = "";
};

// Exhaustive scan over all (x, y) index pairs.  Chunks cover fixed ranges
// of x, each chunk stops at its own first failure, and chunk results are
// folded in index order, so the reported counterexample is the
// lexicographically first pair regardless of thread scheduling (when
// early_exit is off).
template <typename Check>
PairScanOutcome scan_pairs(std::uint64_t nx, std::uint64_t ny,
                           unsigned threads, bool early_exit, Check check) {
  constexpr std::uint64_t kChunk = 16;
  auto chunks = run_chunks<PairScanOutcome>(
      nx, kChunk, threads,
      [&](std::uint64_t begin, std::uint64_t end, std::atomic<bool>& stop) {
        PairScanOutcome out;
        for (std::uint64_t xi = begin; xi < end && !out.found; ++xi) {
          if (early_exit && stop.load(std::memory_order_relaxed)) break;
          for (std::uint64_t yi = 0; yi < ny; ++yi) {
            ++out.checked;
            const char* reason = check(xi, yi);
            if (reason) {
              out.found = true;
              out.xi = xi;
              out.yi = yi;
              out.reason = reason;
              if (early_exit) stop.store(true, std::memory_order_relaxed);
              break;
            }
          }
        }
        return out;
      });
  PairScanOutcome merged;
  for (const PairScanOutcome& c : chunks) {
    merged.checked += c.checked;
    if (!merged.found && c.found) {
      merged.found = true;
      merged.xi = c.xi;
      merged.yi = c.yi;
      merged.reason = c.reason;
    }
  }
  return merged;
}

// Seeded scan over random (x, y) index pairs; stops at the first failure.
template <typename Check>
PairScanOutcome sample_pairs(std::uint64_t nx, std::uint64_t ny,
                             std::uint64_t seed, std::uint64_t trials,
                             Check check) {
  Rng rng(seed);
  PairScanOutcome out;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::uint64_t xi = rng.next_below(nx);
    const std::uint64_t yi = rng.next_below(ny);
    ++out.checked;
    const char* reason = check(xi, yi);
    if (reason) {
      out.found = true;
      out.xi = xi;
      out.yi = yi;
      out.reason = reason;
      break;
    }
  }
  return out;
}

inline std::uint64_t permute64(const std::vector<std::uint32_t>& img,
                               std::uint64_t w) {
  std::uint64_t out = 0;
  while (w) {
    const int i = std::countl_zero(w);
    w &= ~(1ull << (63 - i));
    out |= 1ull << (63 - img[static_cast<std::size_t>(i)]);
  }
  return out;
}

inline void validate_assignment(const ExplicitCode& code,
                                const std::vector<CoordPerm>& perms) {
  if (perms.size() != code.size())
    throw std::invalid_argument("assignment: one permutation per codeword");
  for (const CoordPerm& p : perms)
    if (p.length() != code.length || !p.is_permutation())
      throw std::invalid_argument("assignment: invalid permutation");
}

inline std::vector<std::uint64_t> pack64(const ExplicitCode& code) {
  std::vector<std::uint64_t> w64;
  w64.reserve(code.size());
  for (const BinaryWord& w : code.words) w64.push_back(w.blocks()[0]);
  return w64;
}

template <typename Lookup>
VerificationReport finish_pair_report(const PairScanOutcome& scan,
                                      const CheckOptions& opt,
                                      Lookup describe) {
  VerificationReport rep;
  rep.passed = !scan.found;
  rep.checked = scan.checked;
  rep.mode = opt.mode;
  if (opt.mode == CheckMode::sampled) {
    rep.seed = opt.seed;
    rep.trials = opt.trials;
  }
  if (scan.found)
    rep.counterexample =
        Counterexample{describe(scan.xi), describe(scan.yi), scan.reason};
  return rep;
}

}  // namespace detail

namespace detail {

// Shared core of the binary propelinearity and transitivity checks.
inline VerificationReport binary_axiom_check(
    const ExplicitCode& code, const std::vector<CoordPerm>& perms,
    const CheckOptions& opt, bool check_composition) {
  validate_assignment(code, perms);
  const std::size_t L = code.length;
  PairScanOutcome scan;
  if (L <= 64 && L > 0) {
    const std::vector<std::uint64_t> w64 = pack64(code);
    auto check = [&](std::uint64_t xi, std::uint64_t yi) -> const char* {
      const auto& px = perms[xi].img;
      const std::uint64_t z =
          w64[xi] ^ permute64(px, w64[yi]);
      const auto it = std::lower_bound(w64.begin(), w64.end(), z);
      if (it == w64.end() || *it != z) return "closure";
      if (check_composition) {
        const auto zi = static_cast<std::size_t>(it - w64.begin());
        const auto& pz = perms[zi].img;
        const auto& py = perms[yi].img;
        for (std::size_t i = 0; i < L; ++i)
          if (pz[i] != px[py[i]]) return "composition";
      }
      return nullptr;
    };
    scan = (opt.mode == CheckMode::exhaustive)
               ? scan_pairs(code.size(), code.size(), opt.threads,
                            opt.early_exit, check)
               : sample_pairs(code.size(), code.size(), opt.seed, opt.trials,
                              check);
  } else {
    auto check = [&](std::uint64_t xi, std::uint64_t yi) -> const char* {
      const BinaryWord z =
          code.words[xi] ^ permute(perms[xi], code.words[yi]);
      const auto idx = code.index_of(z);
      if (!idx) return "closure";
      if (check_composition &&
          perms[*idx] != coord_compose(perms[xi], perms[yi]))
        return "composition";
      return nullptr;
    };
    scan = (opt.mode == CheckMode::exhaustive)
               ? scan_pairs(code.size(), code.size(), opt.threads,
                            opt.early_exit, check)
               : sample_pairs(code.size(), code.size(), opt.seed, opt.trials,
                              check);
  }
  return finish_pair_report(scan, opt, [&](std::uint64_t i) {
    return code.words[i].to_string();
  });
}

}  // namespace detail

// Both propelinearity axioms over codeword pairs:
//  (i)  x + pi_x(y) stays in the code,
//  (ii) pi_{x + pi_x(y)} = pi_x o pi_y.
inline VerificationReport check_propelinear(const ExplicitCode& code,
                                            const std::vector<CoordPerm>& perms,
                                            const CheckOptions& opt = {}) {
  return detail::binary_axiom_check(code, perms, opt, true);
}

// Axiom (i) only: the assignment witnesses transitivity.
inline VerificationReport check_transitive(const ExplicitCode& code,
                                           const std::vector<CoordPerm>& perms,
                                           const CheckOptions& opt = {}) {
  return detail::binary_axiom_check(code, perms, opt, false);
}

// One CoordPerm per codeword of an enumerated concatenated code.
inline std::vector<CoordPerm> canonical_assignment(const PhelpsCode& code,
                                                   const ExplicitCode& words) {
  std::vector<CoordPerm> perms;
  perms.reserve(words.size());
  for (const BinaryWord& w : words.words)
    perms.push_back(pi_for_codeword(code, w));
  return perms;
}

// Draws uniform codewords without enumerating the code: a random extended
// Hamming word, a random MDS label word, then one of the two coset words
// per block.
class PhelpsSampler {
 public:
  PhelpsSampler(const PhelpsCode& code, std::uint64_t seed)
      : code_(code),
        basis_(gf2_nullspace_basis(code.hamming.parity_checks, code.n)),
        rng_(seed) {}

  BinaryWord next() {
    BinaryWord h(code_.n);
    for (const BinaryWord& b : basis_)
      if (rng_.next_bit()) h ^= b;
    QuatWord x(code_.n - 1);
    for (Quat& v : x) v = static_cast<Quat>(rng_.next_below(4));
    QuatWord a = x;
    a.push_back(eval_quasigroup(code_.shape, x));
    BinaryWord w(code_.length());
    for (std::size_t i = 0; i < code_.n; ++i) {
      const auto pair =
          block_coset({a[i], static_cast<std::uint8_t>(h.get(i))});
      set_nibble(w, i, pair[rng_.next_bit() ? 1 : 0]);
    }
    return w;
  }

 private:
  const PhelpsCode& code_;
  std::vector<BinaryWord> basis_;
  detail::Rng rng_;
};

namespace detail {

inline VerificationReport phelps_axiom_check(const PhelpsCode& code,
                                             const CheckOptions& opt,
                                             bool check_composition,
                                             std::uint64_t budget_bytes,
                                             bool force) {
  if (opt.mode == CheckMode::exhaustive) {
    const ExplicitCode words = phelps_enumerate(code, budget_bytes, force);
    const std::vector<CoordPerm> perms = canonical_assignment(code, words);
    return binary_axiom_check(words, perms, opt, check_composition);
  }
  PhelpsSampler sampler(code, opt.seed);
  VerificationReport rep;
  rep.mode = CheckMode::sampled;
  rep.seed = opt.seed;
  rep.trials = opt.trials;
  for (std::uint64_t t = 0; t < opt.trials; ++t) {
    const BinaryWord x = sampler.next();
    const BinaryWord y = sampler.next();
    ++rep.checked;
    const CoordPerm px = pi_for_codeword(code, x);
    const BinaryWord z = x ^ permute(px, y);
    const char* reason = nullptr;
    if (!phelps_contains(code, z)) {
      reason = "closure";
    } else if (check_composition) {
      const CoordPerm py = pi_for_codeword(code, y);
      if (pi_for_codeword(code, z) != coord_compose(px, py))
        reason = "composition";
    }
    if (reason) {
      rep.passed = false;
      rep.counterexample =
          Counterexample{x.to_string(), y.to_string(), reason};
      break;
    }
  }
  return rep;
}

}  // namespace detail

// Implicit-membership variant: exhaustive mode enumerates (subject to the
// budget), sampled mode never materializes the code.
inline VerificationReport check_propelinear(
    const PhelpsCode& code, const CheckOptions& opt = {},
    std::uint64_t budget_bytes = kDefaultEnumerationBudget,
    bool force = false) {
  return detail::phelps_axiom_check(code, opt, true, budget_bytes, force);
}

inline VerificationReport check_transitive(
    const PhelpsCode& code, const CheckOptions& opt = {},
    std::uint64_t budget_bytes = kDefaultEnumerationBudget,
    bool force = false) {
  return detail::phelps_axiom_check(code, opt, false, budget_bytes, force);
}

// Extended 1-perfect code test: correct size, even weights, minimum
// distance 4, and the punctured code tiles the full space with radius-1
// balls.  The tiling is checked directly over all 2^(L-1) punctured words
// when that fits in memory, otherwise by the sphere-counting identity.
inline VerificationReport check_extended_perfect(const ExplicitCode& code,
                                                 unsigned threads = 0) {
  const std::size_t L = code.length;
  if (L < 4 || (L & (L - 1)) != 0)
    throw std::invalid_argument(
        "check_extended_perfect: length must be a power of two, >= 4");
  VerificationReport rep;
  rep.mode = CheckMode::exhaustive;
  auto fail = [&](std::string x, std::string y, const char* reason) {
    rep.passed = false;
    rep.counterexample = Counterexample{std::move(x), std::move(y), reason};
  };
  std::size_t logL = 0;
  while ((std::size_t{1} << logL) < L) ++logL;
  ++rep.checked;
  if (L - logL - 1 >= 64 ||
      code.size() != (std::size_t{1} << (L - logL - 1))) {
    fail(std::to_string(code.size()), "-", "size");
    return rep;
  }
  for (const BinaryWord& w : code.words) {
    ++rep.checked;
    if (w.weight() % 2 != 0) {
      fail(w.to_string(), "-", "odd-weight");
      return rep;
    }
  }
  {
    auto scan = detail::scan_pairs(
        code.size(), code.size(), threads, false,
        [&](std::uint64_t xi, std::uint64_t yi) -> const char* {
          if (xi >= yi) return nullptr;
          return hamming_distance(code.words[xi], code.words[yi]) < 4
                     ? "distance"
                     : nullptr;
        });
    rep.checked += scan.checked;
    if (scan.found) {
      fail(code.words[scan.xi].to_string(), code.words[scan.yi].to_string(),
           "distance");
      return rep;
    }
  }
  // Puncture the last coordinate and check the perfect packing.
  if (L <= 64 && L - 1 <= 26) {
    std::vector<bool> hit(std::size_t{1} << (L - 1), false);
    for (const BinaryWord& w : code.words) {
      const std::uint64_t p = w.blocks()[0] >> (65 - L);
      for (std::size_t i = 0; i + 1 <= L; ++i) {
        const std::uint64_t q =
            (i == 0) ? p : p ^ (std::uint64_t{1} << (L - 1 - i));
        ++rep.checked;
        if (hit[q]) {
          fail(w.to_string(), "-", "packing-overlap");
          return rep;
        }
        hit[q] = true;
      }
    }
    for (std::size_t q = 0; q < hit.size(); ++q) {
      ++rep.checked;
      if (!hit[q]) {
        fail(std::to_string(q), "-", "packing-cover");
        return rep;
      }
    }
  } else {
    ++rep.checked;
    const unsigned __int128 spheres =
        static_cast<unsigned __int128>(code.size()) * L;
    if (spheres != (static_cast<unsigned __int128>(1) << (L - 1))) {
      fail(std::to_string(code.size()), "-", "packing-count");
      return rep;
    }
  }
  return rep;
}

struct BinaryKernel {
  std::vector<BinaryWord> words;
  std::size_t dimension = 0;
};

// Kernel {k : k + C = C} by brute force over codewords.
inline BinaryKernel kernel_bruteforce_binary(const ExplicitCode& code,
                                             unsigned threads = 0) {
  if (code.size() == 0)
    throw std::invalid_argument("kernel_bruteforce_binary: empty code");
  if (!code.contains(BinaryWord(code.length)))
    throw std::invalid_argument(
        "kernel_bruteforce_binary: code must contain the zero word");
  std::vector<std::vector<std::size_t>> found;
  if (code.length <= 64 && code.length > 0) {
    const std::vector<std::uint64_t> w64 = detail::pack64(code);
    found = detail::run_chunks<std::vector<std::size_t>>(
        code.size(), 16, threads,
        [&](std::uint64_t begin, std::uint64_t end, std::atomic<bool>&) {
          std::vector<std::size_t> out;
          for (std::uint64_t k = begin; k < end; ++k) {
            bool closed = true;
            for (const std::uint64_t c : w64) {
              if (!std::binary_search(w64.begin(), w64.end(), w64[k] ^ c)) {
                closed = false;
                break;
              }
            }
            if (closed) out.push_back(k);
          }
          return out;
        });
  } else {
    found = detail::run_chunks<std::vector<std::size_t>>(
        code.size(), 16, threads,
        [&](std::uint64_t begin, std::uint64_t end, std::atomic<bool>&) {
          std::vector<std::size_t> out;
          for (std::uint64_t k = begin; k < end; ++k) {
            bool closed = true;
            for (const BinaryWord& c : code.words) {
              if (!code.contains(code.words[k] ^ c)) {
                closed = false;
                break;
              }
            }
            if (closed) out.push_back(k);
          }
          return out;
        });
  }
  BinaryKernel kernel;
  for (const auto& chunk : found)
    for (std::size_t k : chunk) kernel.words.push_back(code.words[k]);
  kernel.dimension = gf2_rank(kernel.words);
  if (kernel.words.size() != (std::size_t{1} << kernel.dimension))
    throw std::logic_error("kernel_bruteforce_binary: kernel is not a group");
  return kernel;
}

inline std::size_t rank_of(const ExplicitCode& code) {
  return gf2_rank(code.words);
}

namespace detail {

// Lexicographically least element of w + K.
inline BinaryWord coset_representative(const BinaryWord& w,
                                       const std::vector<BinaryWord>& kernel) {
  BinaryWord best = w;
  for (const BinaryWord& k : kernel) {
    BinaryWord cand = w ^ k;
    if (cand < best) best = std::move(cand);
  }
  return best;
}

inline void validate_kernel(const ExplicitCode& code,
                            const std::vector<BinaryWord>& kernel) {
  if (kernel.empty())
    throw std::logic_error("kernel: must contain the zero word");
  for (const BinaryWord& k : kernel)
    if (!code.contains(k))
      throw std::logic_error("kernel: not a subset of the code");
  if (kernel.size() != (std::size_t{1} << gf2_rank(kernel)))
    throw std::logic_error("kernel: not a group");
}

}  // namespace detail

// A structure is normalized when the permutation map is constant on the
// cosets of the kernel.
inline VerificationReport check_normalized(
    const ExplicitCode& code, const std::vector<CoordPerm>& perms,
    const std::vector<BinaryWord>& kernel) {
  detail::validate_assignment(code, perms);
  detail::validate_kernel(code, kernel);
  VerificationReport rep;
  rep.mode = CheckMode::exhaustive;
  std::map<BinaryWord, std::size_t> first_of_coset;
  for (std::size_t i = 0; i < code.size(); ++i) {
    ++rep.checked;
    const BinaryWord rep_word =
        detail::coset_representative(code.words[i], kernel);
    const auto [it, inserted] = first_of_coset.emplace(rep_word, i);
    if (!inserted && perms[i] != perms[it->second]) {
      rep.passed = false;
      rep.counterexample =
          Counterexample{code.words[it->second].to_string(),
                         code.words[i].to_string(), "coset-mismatch"};
      return rep;
    }
  }
  return rep;
}

// Distinct permutations assigned to the given codewords.
inline std::vector<CoordPerm> distinct_perms_on(
    const ExplicitCode& code, const std::vector<CoordPerm>& perms,
    const std::vector<BinaryWord>& subset) {
  detail::validate_assignment(code, perms);
  std::set<CoordPerm> s;
  for (const BinaryWord& w : subset) {
    const auto idx = code.index_of(w);
    if (!idx) throw std::invalid_argument("distinct_perms_on: not a codeword");
    s.insert(perms[*idx]);
  }
  return {s.begin(), s.end()};
}

struct NormalizedSearchOptions {
  // Widen each coset's candidate pool from the involutions observed on that
  // coset to every block-diagonal coordinate permutation with involution
  // blocks.  Candidates are pruned by the translation axiom first.
  bool all_involutions = false;
  std::uint64_t max_combinations = 4096;
  unsigned threads = 0;
};

namespace detail {

inline std::vector<CoordPerm> block_diagonal_involutions(std::size_t length) {
  if (length % 4 != 0)
    throw std::invalid_argument(
        "block_diagonal_involutions: length must be a multiple of 4");
  std::vector<PermE4> block_invs;
  for (const PermE4& p : all_perms_e4())
    if (p.is_involution()) block_invs.push_back(p);
  const std::size_t blocks = length / 4;
  std::vector<CoordPerm> out;
  std::vector<std::size_t> sel(blocks, 0);
  for (;;) {
    CoordPerm perm;
    perm.img.resize(length);
    for (std::size_t b = 0; b < blocks; ++b)
      for (std::size_t p = 0; p < 4; ++p)
        perm.img[4 * b + p] =
            static_cast<std::uint32_t>(4 * b + block_invs[sel[b]].img[p]);
    out.push_back(std::move(perm));
    std::size_t b = blocks;
    bool carried = false;
    while (b-- > 0) {
      if (++sel[b] < block_invs.size()) {
        carried = true;
        break;
      }
      sel[b] = 0;
    }
    if (!carried) break;
  }
  return out;
}

}  // namespace detail

// Searches for assignments that are constant on kernel cosets and still
// satisfy both propelinearity axioms.  Per-coset candidates default to the
// involutions observed on that coset; combinations are capped by
// max_combinations.  Results are full assignments in deterministic order.
inline std::vector<std::vector<CoordPerm>> enumerate_normalized(
    const ExplicitCode& code, const std::vector<CoordPerm>& perms,
    const NormalizedSearchOptions& opts = {}) {
  detail::validate_assignment(code, perms);
  for (const CoordPerm& p : perms)
    if (!p.is_involution())
      throw std::invalid_argument(
          "enumerate_normalized: assignment must consist of involutions");
  const BinaryKernel kernel = kernel_bruteforce_binary(code, opts.threads);

  std::map<BinaryWord, std::vector<std::size_t>> cosets;
  for (std::size_t i = 0; i < code.size(); ++i)
    cosets[detail::coset_representative(code.words[i], kernel.words)]
        .push_back(i);

  // The translation axiom holds for a whole coset as soon as it holds for
  // one member, so candidates are pruned against the representative.
  const bool fast = code.length <= 64 && code.length > 0;
  const std::vector<std::uint64_t> w64 =
      fast ? detail::pack64(code) : std::vector<std::uint64_t>{};
  auto translation_ok = [&](std::size_t rep_index, const CoordPerm& p) {
    if (fast) {
      const std::uint64_t x = w64[rep_index];
      for (const std::uint64_t c : w64)
        if (!std::binary_search(w64.begin(), w64.end(),
                                x ^ detail::permute64(p.img, c)))
          return false;
      return true;
    }
    for (const BinaryWord& c : code.words)
      if (!code.contains(code.words[rep_index] ^ permute(p, c))) return false;
    return true;
  };

  std::vector<std::vector<CoordPerm>> pools;
  std::vector<const std::vector<std::size_t>*> members;
  for (const auto& [rep_word, indices] : cosets) {
    std::vector<CoordPerm> pool;
    if (opts.all_involutions) {
      pool = detail::block_diagonal_involutions(code.length);
    } else {
      std::set<CoordPerm> observed;
      for (std::size_t i : indices) observed.insert(perms[i]);
      pool.assign(observed.begin(), observed.end());
    }
    std::vector<CoordPerm> kept;
    for (CoordPerm& p : pool)
      if (translation_ok(indices.front(), p)) kept.push_back(std::move(p));
    pools.push_back(std::move(kept));
    members.push_back(&indices);
  }

  unsigned __int128 combos = 1;
  for (const auto& pool : pools) {
    if (pool.empty()) return {};
    combos *= pool.size();
    if (combos > opts.max_combinations)
      throw budget_error("enumerate_normalized: combination budget of " +
                         std::to_string(opts.max_combinations) + " exceeded");
  }

  std::vector<std::vector<CoordPerm>> found;
  std::vector<std::size_t> sel(pools.size(), 0);
  for (;;) {
    std::vector<CoordPerm> cand(code.size());
    for (std::size_t g = 0; g < pools.size(); ++g)
      for (std::size_t i : *members[g]) cand[i] = pools[g][sel[g]];
    CheckOptions co;
    co.early_exit = true;
    co.threads = opts.threads;
    if (check_propelinear(code, cand, co).passed)
      found.push_back(std::move(cand));
    std::size_t g = pools.size();
    bool carried = false;
    while (g-- > 0) {
      if (++sel[g] < pools[g].size()) {
        carried = true;
        break;
      }
      sel[g] = 0;
    }
    if (!carried) break;
  }
  return found;
}

// Group sanity of (C, *): identity at the zero word, two-sided inverses
// with inverse permutations, plus sampled cancellation and the isometry
// d(x * u, x * v) = d(u, v) for arbitrary u, v.
inline VerificationReport check_group_axioms(const ExplicitCode& code,
                                             const std::vector<CoordPerm>& perms,
                                             const CheckOptions& opt = {}) {
  detail::validate_assignment(code, perms);
  VerificationReport rep;
  rep.mode = CheckMode::sampled;
  rep.seed = opt.seed;
  rep.trials = opt.trials;
  auto fail = [&](std::string x, std::string y, const char* reason) {
    rep.passed = false;
    rep.counterexample = Counterexample{std::move(x), std::move(y), reason};
  };
  const BinaryWord zero(code.length);
  ++rep.checked;
  const auto zero_idx = code.index_of(zero);
  if (!zero_idx || perms[*zero_idx] != CoordPerm::identity(code.length)) {
    fail(zero.to_string(), "-", "identity");
    return rep;
  }
  for (std::size_t i = 0; i < code.size(); ++i) {
    ++rep.checked;
    const CoordPerm inv = coord_inverse(perms[i]);
    const BinaryWord x_inv = permute(inv, code.words[i]);
    const auto idx = code.index_of(x_inv);
    if (!idx || perms[*idx] != inv) {
      fail(code.words[i].to_string(), x_inv.to_string(), "inverse");
      return rep;
    }
  }
  detail::Rng rng(opt.seed);
  for (std::uint64_t t = 0; t < opt.trials; ++t) {
    const std::size_t xi = rng.next_below(code.size());
    const std::size_t ui = rng.next_below(code.size());
    const std::size_t vi = rng.next_below(code.size());
    ++rep.checked;
    if (ui != vi) {
      const BinaryWord a =
          code.words[xi] ^ permute(perms[xi], code.words[ui]);
      const BinaryWord b =
          code.words[xi] ^ permute(perms[xi], code.words[vi]);
      if (a == b) {
        fail(code.words[ui].to_string(), code.words[vi].to_string(),
             "cancellation");
        return rep;
      }
    }
  }
  for (std::uint64_t t = 0; t < opt.trials; ++t) {
    const std::size_t xi = rng.next_below(code.size());
    BinaryWord u(code.length);
    BinaryWord v(code.length);
    for (std::size_t i = 0; i < code.length; ++i) {
      u.set(i, rng.next_bit());
      v.set(i, rng.next_bit());
    }
    ++rep.checked;
    const BinaryWord xu = code.words[xi] ^ permute(perms[xi], u);
    const BinaryWord xv = code.words[xi] ^ permute(perms[xi], v);
    if (hamming_distance(xu, xv) != hamming_distance(u, v)) {
      fail(u.to_string(), v.to_string(), "isometry");
      return rep;
    }
  }
  return rep;
}

// Equivalence invariants; codes with different bundles are inequivalent.
struct InvariantBundle {
  std::size_t length = 0;
  std::size_t size = 0;
  std::size_t rank = 0;
  std::size_t kernel_dim = 0;
  std::map<std::size_t, std::size_t> weights;

  friend bool operator==(const InvariantBundle&, const InvariantBundle&) =
      default;
};

inline InvariantBundle invariant_bundle(const ExplicitCode& code,
                                        unsigned threads = 0) {
  InvariantBundle b;
  b.length = code.length;
  b.size = code.size();
  b.rank = rank_of(code);
  b.kernel_dim = kernel_bruteforce_binary(code, threads).dimension;
  b.weights = weight_distribution(code);
  return b;
}

// Isotopic propelinearity of a quaternary structure: sigma_x fixes the
// code, sigma_{x,i}(0) = x_i, and sigma_{sigma_x(y)} = sigma_x o sigma_y.
inline VerificationReport check_isotopic(const IsotopicMdsStructure& s,
                                         const CheckOptions& opt = {}) {
  if (s.sigmas.size() != s.code.words.size())
    throw std::invalid_argument("check_isotopic: malformed structure");
  const std::size_t n = s.code.length();
  for (const MultiPerm& mp : s.sigmas) {
    if (mp.length() != n)
      throw std::invalid_argument("check_isotopic: malformed structure");
    for (const PermE4& p : mp.perms)
      if (!p.is_permutation())
        throw std::invalid_argument("check_isotopic: invalid permutation");
  }
  VerificationReport rep;
  rep.mode = opt.mode;
  if (opt.mode == CheckMode::sampled) {
    rep.seed = opt.seed;
    rep.trials = opt.trials;
  }
  for (std::size_t i = 0; i < s.code.words.size(); ++i) {
    ++rep.checked;
    bool ok = true;
    for (std::size_t p = 0; p < n; ++p)
      if (s.sigmas[i].perms[p](0) != s.code.words[i][p]) ok = false;
    if (!ok) {
      rep.passed = false;
      rep.counterexample =
          Counterexample{to_string(s.code.words[i]), "-", "zero-image"};
      return rep;
    }
  }
  auto check = [&](std::uint64_t xi, std::uint64_t yi) -> const char* {
    const QuatWord z = s.sigmas[xi](s.code.words[yi]);
    const auto zi = s.code.index_of(z);
    if (!zi) return "closure";
    if (s.sigmas[*zi] != multi_compose(s.sigmas[xi], s.sigmas[yi]))
      return "composition";
    return nullptr;
  };
  const auto scan =
      (opt.mode == CheckMode::exhaustive)
          ? detail::scan_pairs(s.code.size(), s.code.size(), opt.threads,
                               opt.early_exit, check)
          : detail::sample_pairs(s.code.size(), s.code.size(), opt.seed,
                                 opt.trials, check);
  rep.checked += scan.checked;
  if (scan.found) {
    rep.passed = false;
    rep.counterexample = Counterexample{to_string(s.code.words[scan.xi]),
                                        to_string(s.code.words[scan.yi]),
                                        scan.reason};
  }
  return rep;
}

// Sampled isotopic check straight from the closed form; nothing is
// materialized, membership is the O(n) quasigroup test.
inline VerificationReport check_isotopic_sampled(const QuasigroupShape& shape,
                                                 const CheckOptions& opt = {}) {
  VerificationReport rep;
  rep.mode = CheckMode::sampled;
  rep.seed = opt.seed;
  rep.trials = opt.trials;
  detail::Rng rng(opt.seed);
  auto draw = [&] {
    QuatWord x(shape.n - 1);
    for (Quat& v : x) v = static_cast<Quat>(rng.next_below(4));
    x.push_back(eval_quasigroup(shape, x));
    return x;
  };
  for (std::uint64_t t = 0; t < opt.trials; ++t) {
    const QuatWord x = draw();
    const QuatWord y = draw();
    ++rep.checked;
    const MultiPerm sx = sigma_for_codeword(shape, x);
    const char* reason = nullptr;
    bool zero_ok = true;
    for (std::size_t p = 0; p < shape.n; ++p)
      if (sx.perms[p](0) != x[p]) zero_ok = false;
    const QuatWord z = sx(y);
    if (!zero_ok)
      reason = "zero-image";
    else if (!mds_contains(shape, z))
      reason = "closure";
    else if (sigma_for_codeword(shape, z) !=
             multi_compose(sx, sigma_for_codeword(shape, y)))
      reason = "composition";
    if (reason) {
      rep.passed = false;
      rep.counterexample =
          Counterexample{to_string(x), to_string(y), reason};
      break;
    }
  }
  return rep;
}

}  // namespace propelin
