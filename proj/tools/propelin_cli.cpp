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

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "propelin.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

struct CommonConfig {
  std::size_t n = 4;
  std::string shape = "none";
  std::string mode = "exhaustive";
  std::uint64_t seed = 0;
  std::uint64_t trials = 10000;
  std::uint64_t memory_budget_mib = 512;
  bool force_enumerate = false;
  unsigned threads = 0;

  std::uint64_t budget_bytes() const { return memory_budget_mib << 20; }

  propelin::QuasigroupShape parse_shape() const {
    if (shape.empty() || shape == "none")
      return propelin::QuasigroupShape(n, {});
    return propelin::detail::shape_from_token(std::to_string(n) + ":" + shape);
  }

  propelin::CheckOptions check_options() const {
    propelin::CheckOptions opt;
    opt.mode = mode == "sampled" ? propelin::CheckMode::sampled
                                 : propelin::CheckMode::exhaustive;
    opt.seed = seed;
    opt.trials = trials;
    opt.threads = threads;
    return opt;
  }
};

void add_shape_flags(CLI::App* cmd, CommonConfig& cfg) {
  cmd->add_option("--n", cfg.n, "Number of length-4 blocks / symbols");
  cmd->add_option("--shape", cfg.shape,
                  "Cut positions i1,i2,... ('none' for the empty list)");
}

void add_mode_flags(CLI::App* cmd, CommonConfig& cfg) {
  cmd->add_option("--mode", cfg.mode, "exhaustive or sampled")
      ->check(CLI::IsMember({"exhaustive", "sampled"}));
  cmd->add_option("--seed", cfg.seed, "Seed for sampled mode");
  cmd->add_option("--trials", cfg.trials, "Trials for sampled mode");
  cmd->add_option("--threads", cfg.threads, "Worker cap (0 = hardware)");
}

void add_budget_flags(CLI::App* cmd, CommonConfig& cfg) {
  cmd->add_option("--memory-budget", cfg.memory_budget_mib,
                  "Enumeration budget in MiB");
  cmd->add_flag("--force-enumerate", cfg.force_enumerate,
                "Enumerate past the memory budget");
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

int report_exit(const propelin::VerificationReport& rep) {
  std::cout << rep.to_text();
  return rep.passed ? kExitPass : kExitFail;
}

// mds build: enumerate the MDS code of a shape, write QCODE and
// optionally the closed-form structure as QSTRUCT.
int cmd_mds_build(const CommonConfig& cfg, const std::string& out,
                  const std::string& struct_out) {
  const propelin::QuasigroupShape shape = cfg.parse_shape();
  const propelin::MdsCode code =
      propelin::mds_enumerate(shape, cfg.budget_bytes());
  if (out.empty()) {
    propelin::write_qcode(std::cout, code);
  } else {
    auto os = open_output(out);
    propelin::write_qcode(os, code);
  }
  if (!struct_out.empty()) {
    propelin::IsotopicMdsStructure s{code, {}};
    s.sigmas.reserve(code.size());
    for (const propelin::QuatWord& w : code.words)
      s.sigmas.push_back(propelin::sigma_for_codeword(shape, w));
    auto os = open_output(struct_out);
    propelin::write_qstruct(os, s);
  }
  return kExitPass;
}

// mds verify: isotopic propelinearity of the closed-form structure, or of
// a QSTRUCT assignment when one is given.
int cmd_mds_verify(const CommonConfig& cfg, const std::string& code_path,
                   const std::string& struct_path) {
  propelin::QuasigroupShape shape = cfg.parse_shape();
  std::optional<propelin::MdsCode> file_code;
  if (!code_path.empty()) {
    auto is = open_input(code_path);
    file_code = propelin::read_qcode(is);
    shape = file_code->shape;
  }
  if (!struct_path.empty()) {
    auto is = open_input(struct_path);
    propelin::QuatAssignmentList list = propelin::read_qstruct(is);
    if (list.words.size() != (std::size_t{1} << (2 * (shape.n - 1))))
      throw std::runtime_error("mds verify: structure does not cover the code");
    for (const propelin::QuatWord& w : list.words)
      if (!propelin::mds_contains(shape, w))
        throw std::runtime_error("mds verify: structure word outside the code");
    propelin::IsotopicMdsStructure s{
        propelin::MdsCode{shape, std::move(list.words)},
        std::move(list.sigmas)};
    return report_exit(propelin::check_isotopic(s, cfg.check_options()));
  }
  if (cfg.mode == "sampled" && !file_code)
    return report_exit(
        propelin::check_isotopic_sampled(shape, cfg.check_options()));
  propelin::IsotopicMdsStructure s =
      file_code ? propelin::IsotopicMdsStructure{std::move(*file_code), {}}
                : propelin::shape_structure(shape, cfg.budget_bytes());
  if (s.sigmas.empty()) {
    s.sigmas.reserve(s.code.size());
    for (const propelin::QuatWord& w : s.code.words)
      s.sigmas.push_back(propelin::sigma_for_codeword(shape, w));
  }
  return report_exit(propelin::check_isotopic(s, cfg.check_options()));
}

// phelps build: with --enumerate, materialize and write BINCODE (and
// optionally PSTRUCT); without it, print the code parameters only.
int cmd_phelps_build(const CommonConfig& cfg, bool enumerate,
                     const std::string& out, const std::string& struct_out) {
  const propelin::QuasigroupShape shape = cfg.parse_shape();
  const propelin::PhelpsCode code(cfg.n, shape.cuts);
  if (!enumerate) {
    if (!out.empty() || !struct_out.empty())
      throw CLI::ValidationError("--out/--struct-out require --enumerate");
    std::cout << "length " << code.length() << "\n";
    std::cout << "size_log2 " << code.size_log2() << "\n";
    return kExitPass;
  }
  const propelin::ExplicitCode words =
      propelin::phelps_enumerate(code, cfg.budget_bytes(), cfg.force_enumerate);
  if (out.empty()) {
    propelin::write_bincode(std::cout, words);
  } else {
    auto os = open_output(out);
    propelin::write_bincode(os, words);
  }
  if (!struct_out.empty()) {
    auto os = open_output(struct_out);
    propelin::write_pstruct(os, code, words);
  }
  return kExitPass;
}

// phelps verify: propelinearity of the canonical structure; exhaustive
// mode enumerates, sampled mode uses the O(n) membership oracle only.
int cmd_phelps_verify(const CommonConfig& cfg) {
  const propelin::QuasigroupShape shape = cfg.parse_shape();
  const propelin::PhelpsCode code(cfg.n, shape.cuts);
  return report_exit(propelin::check_propelinear(
      code, cfg.check_options(), cfg.budget_bytes(), cfg.force_enumerate));
}

propelin::BinaryAssignmentList load_assignment(
    const propelin::ExplicitCode& code, const std::string& struct_path) {
  auto is = open_input(struct_path);
  propelin::BinaryAssignmentList list = propelin::read_pstruct(is);
  if (list.words != code.words)
    throw std::runtime_error(
        "structure file does not cover the code word for word");
  return list;
}

int cmd_verify_propelinear(const CommonConfig& cfg,
                           const std::string& code_path,
                           const std::string& struct_path, bool transitive) {
  auto is = open_input(code_path);
  const propelin::ExplicitCode code = propelin::read_bincode(is);
  propelin::BinaryAssignmentList list = load_assignment(code, struct_path);
  const propelin::CheckOptions opt = cfg.check_options();
  return report_exit(transitive
                         ? propelin::check_transitive(code, list.perms, opt)
                         : propelin::check_propelinear(code, list.perms, opt));
}

int cmd_verify_perfect(const CommonConfig& cfg, const std::string& code_path) {
  auto is = open_input(code_path);
  const propelin::ExplicitCode code = propelin::read_bincode(is);
  return report_exit(propelin::check_extended_perfect(code, cfg.threads));
}

propelin::ExplicitCode load_or_build_binary(const CommonConfig& cfg,
                                            const std::string& code_path) {
  if (!code_path.empty()) {
    auto is = open_input(code_path);
    return propelin::read_bincode(is);
  }
  const propelin::QuasigroupShape shape = cfg.parse_shape();
  const propelin::PhelpsCode code(cfg.n, shape.cuts);
  return propelin::phelps_enumerate(code, cfg.budget_bytes(),
                                    cfg.force_enumerate);
}

int cmd_analyze_kernel(const CommonConfig& cfg, const std::string& target,
                       const std::string& code_path) {
  if (target == "mds") {
    const propelin::QuasigroupShape shape = cfg.parse_shape();
    const propelin::MdsCode code =
        propelin::mds_enumerate(shape, cfg.budget_bytes());
    const std::vector<propelin::QuatWord> kernel =
        propelin::kernel_bruteforce_quaternary(code);
    bool match = true;
    for (const propelin::QuatWord& w : code.words)
      if (propelin::mds_kernel_characterize(shape, w) !=
          std::binary_search(kernel.begin(), kernel.end(), w))
        match = false;
    std::cout << "kernel_size " << kernel.size() << "\n";
    std::cout << "characterization_match " << (match ? "true" : "false")
              << "\n";
    return kExitPass;
  }
  const propelin::ExplicitCode code = load_or_build_binary(cfg, code_path);
  const propelin::BinaryKernel kernel =
      propelin::kernel_bruteforce_binary(code, cfg.threads);
  std::cout << "kernel_size " << kernel.words.size() << "\n";
  std::cout << "kernel_dim " << kernel.dimension << "\n";
  return kExitPass;
}

int cmd_analyze_rank(const CommonConfig& cfg, const std::string& code_path) {
  const propelin::ExplicitCode code = load_or_build_binary(cfg, code_path);
  std::cout << "rank " << propelin::rank_of(code) << "\n";
  return kExitPass;
}

int cmd_analyze_weights(const CommonConfig& cfg, const std::string& code_path) {
  const propelin::ExplicitCode code = load_or_build_binary(cfg, code_path);
  for (const auto& [w, c] : propelin::weight_distribution(code))
    std::cout << "weight " << w << " " << c << "\n";
  return kExitPass;
}

int cmd_analyze_normalized(const CommonConfig& cfg,
                           const std::string& code_path,
                           const std::string& struct_path,
                           bool all_involutions,
                           std::uint64_t max_combinations) {
  auto is = open_input(code_path);
  const propelin::ExplicitCode code = propelin::read_bincode(is);
  propelin::BinaryAssignmentList list = load_assignment(code, struct_path);
  const propelin::BinaryKernel kernel =
      propelin::kernel_bruteforce_binary(code, cfg.threads);
  const propelin::VerificationReport rep =
      propelin::check_normalized(code, list.perms, kernel.words);
  std::cout << rep.to_text();
  std::cout << "kernel_distinct_perms "
            << propelin::distinct_perms_on(code, list.perms, kernel.words)
                   .size()
            << "\n";
  propelin::NormalizedSearchOptions opts;
  opts.all_involutions = all_involutions;
  opts.max_combinations = max_combinations;
  opts.threads = cfg.threads;
  const auto found = propelin::enumerate_normalized(code, list.perms, opts);
  std::cout << "normalized_found " << found.size() << "\n";
  return kExitPass;
}

int cmd_member(const CommonConfig& cfg, const std::string& target,
               const std::string& word) {
  const propelin::QuasigroupShape shape = cfg.parse_shape();
  bool member = false;
  if (target == "mds") {
    member = propelin::mds_contains(shape, propelin::parse_quat_word(word));
  } else {
    const propelin::PhelpsCode code(cfg.n, shape.cuts);
    member =
        propelin::phelps_contains(code, propelin::BinaryWord::from_string(word));
  }
  std::cout << (member ? "true" : "false") << "\n";
  return kExitPass;
}

int cmd_bound(const CommonConfig& cfg, const std::string& target) {
  const propelin::BoundFamily family = target == "mds"
                                           ? propelin::BoundFamily::mds
                                           : propelin::BoundFamily::phelps;
  const double value = propelin::bound_evaluate(family, cfg.n);
  std::printf("%.6g\n", value);
  return kExitPass;
}

int cmd_shapes(const CommonConfig& cfg) {
  std::cout << "compositions " << propelin::composition_count(cfg.n) << "\n";
  std::cout << "partitions " << propelin::partition_count(cfg.n - 1) << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Construction and verification of binary propelinear extended perfect "
      "codes built from quaternary MDS codes"};
  app.require_subcommand(1);

  CommonConfig cfg;
  int rc = kExitPass;

  // mds
  auto* mds = app.add_subcommand("mds", "Quaternary MDS codes of a shape");
  mds->require_subcommand(1);
  {
    auto* build = mds->add_subcommand("build", "Enumerate and export");
    static std::string out, struct_out;
    add_shape_flags(build, cfg);
    add_budget_flags(build, cfg);
    build->add_option("--out", out, "QCODE output path (default stdout)");
    build->add_option("--struct-out", struct_out, "QSTRUCT output path");
    build->callback([&] { rc = cmd_mds_build(cfg, out, struct_out); });

    auto* verify = mds->add_subcommand(
        "verify", "Check the isotopic propelinear structure");
    static std::string vcode, vstruct;
    add_shape_flags(verify, cfg);
    add_mode_flags(verify, cfg);
    add_budget_flags(verify, cfg);
    verify->add_option("--code", vcode, "QCODE input path");
    verify->add_option("--struct", vstruct, "QSTRUCT input path");
    verify->callback([&] { rc = cmd_mds_verify(cfg, vcode, vstruct); });
  }

  // phelps
  auto* ph = app.add_subcommand("phelps", "Concatenated codes of length 4n");
  ph->require_subcommand(1);
  {
    auto* build = ph->add_subcommand("build", "Construct and export");
    static bool enumerate = false;
    static std::string out, struct_out;
    add_shape_flags(build, cfg);
    add_budget_flags(build, cfg);
    build->add_flag("--enumerate", enumerate, "Materialize every codeword");
    build->add_option("--out", out, "BINCODE output path (default stdout)");
    build->add_option("--struct-out", struct_out, "PSTRUCT output path");
    build->callback(
        [&] { rc = cmd_phelps_build(cfg, enumerate, out, struct_out); });

    auto* verify =
        ph->add_subcommand("verify", "Check the canonical propelinear"
                                     " structure");
    add_shape_flags(verify, cfg);
    add_mode_flags(verify, cfg);
    add_budget_flags(verify, cfg);
    verify->callback([&] { rc = cmd_phelps_verify(cfg); });
  }

  // verify
  auto* ver = app.add_subcommand("verify", "Checks on explicit code files");
  ver->require_subcommand(1);
  {
    static std::string code_path, struct_path;

    auto* prop = ver->add_subcommand("propelinear", "Both axioms");
    prop->add_option("--code", code_path, "BINCODE input path")->required();
    prop->add_option("--struct", struct_path, "PSTRUCT input path")
        ->required();
    add_mode_flags(prop, cfg);
    prop->callback([&] {
      rc = cmd_verify_propelinear(cfg, code_path, struct_path, false);
    });

    auto* trans = ver->add_subcommand("transitive", "Closure axiom only");
    trans->add_option("--code", code_path, "BINCODE input path")->required();
    trans->add_option("--struct", struct_path, "PSTRUCT input path")
        ->required();
    add_mode_flags(trans, cfg);
    trans->callback([&] {
      rc = cmd_verify_propelinear(cfg, code_path, struct_path, true);
    });

    auto* perf = ver->add_subcommand("perfect", "Extended perfect code test");
    perf->add_option("--code", code_path, "BINCODE input path")->required();
    perf->add_option("--threads", cfg.threads, "Worker cap (0 = hardware)");
    perf->callback([&] { rc = cmd_verify_perfect(cfg, code_path); });
  }

  // analyze
  auto* an = app.add_subcommand("analyze", "Invariants of built codes");
  an->require_subcommand(1);
  {
    static std::string target = "phelps";
    static std::string code_path, struct_path;
    static bool all_involutions = false;
    static std::uint64_t max_combinations = 4096;

    auto* kern = an->add_subcommand("kernel", "Brute-force kernel");
    add_shape_flags(kern, cfg);
    add_budget_flags(kern, cfg);
    kern->add_option("--target", target, "phelps or mds")
        ->check(CLI::IsMember({"phelps", "mds"}));
    kern->add_option("--code", code_path, "BINCODE input path");
    kern->add_option("--threads", cfg.threads, "Worker cap (0 = hardware)");
    kern->callback([&] { rc = cmd_analyze_kernel(cfg, target, code_path); });

    auto* rank = an->add_subcommand("rank", "GF(2) rank of the span");
    add_shape_flags(rank, cfg);
    add_budget_flags(rank, cfg);
    rank->add_option("--code", code_path, "BINCODE input path");
    rank->callback([&] { rc = cmd_analyze_rank(cfg, code_path); });

    auto* wts = an->add_subcommand("weights", "Weight distribution");
    add_shape_flags(wts, cfg);
    add_budget_flags(wts, cfg);
    wts->add_option("--code", code_path, "BINCODE input path");
    wts->callback([&] { rc = cmd_analyze_weights(cfg, code_path); });

    auto* norm = an->add_subcommand(
        "normalized", "Coset constancy and normalized-structure search");
    norm->add_option("--code", code_path, "BINCODE input path")->required();
    norm->add_option("--struct", struct_path, "PSTRUCT input path")
        ->required();
    norm->add_flag("--all-involutions", all_involutions,
                   "Search every block-diagonal involution per coset");
    norm->add_option("--max-combinations", max_combinations,
                     "Search budget across cosets");
    norm->add_option("--threads", cfg.threads, "Worker cap (0 = hardware)");
    norm->callback([&] {
      rc = cmd_analyze_normalized(cfg, code_path, struct_path, all_involutions,
                                  max_combinations);
    });
  }

  // member
  {
    static std::string target = "phelps";
    static std::string word;
    auto* mem = app.add_subcommand("member", "Implicit membership test");
    add_shape_flags(mem, cfg);
    mem->add_option("--target", target, "phelps or mds")
        ->check(CLI::IsMember({"phelps", "mds"}));
    mem->add_option("--word", word, "Word to test")->required();
    mem->callback([&] { rc = cmd_member(cfg, target, word); });
  }

  // bound
  {
    static std::string target = "phelps";
    auto* bound = app.add_subcommand(
        "bound", "Lower bound on the number of inequivalent codes");
    bound->add_option("--n", cfg.n, "Parameter n");
    bound->add_option("--target", target, "phelps or mds")
        ->check(CLI::IsMember({"phelps", "mds"}));
    bound->callback([&] { rc = cmd_bound(cfg, target); });
  }

  // shapes
  {
    auto* shapes =
        app.add_subcommand("shapes", "Count cut lists and block-size multisets");
    shapes->add_option("--n", cfg.n, "Parameter n");
    shapes->callback([&] { rc = cmd_shapes(cfg); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitError;
  } catch (const propelin::budget_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return rc;
}
