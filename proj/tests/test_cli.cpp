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

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int status = -1;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() /
                 ("propelin_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

RunResult run(const std::string& args) {
  static int counter = 0;
  const fs::path base = scratch_dir() / ("run_" + std::to_string(counter++));
  const fs::path out = base.string() + ".out";
  const fs::path err = base.string() + ".err";
  const std::string cmd = std::string(PROPELIN_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int raw = std::system(cmd.c_str());
  RunResult r;
  REQUIRE(raw != -1);
  REQUIRE(WIFEXITED(raw));
  r.status = WEXITSTATUS(raw);
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::size_t line_count(const std::string& text) {
  std::size_t n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

const fs::path kBincode = scratch_dir() / "code.txt";
const fs::path kPstruct = scratch_dir() / "struct.txt";
const fs::path kBincode2 = scratch_dir() / "code2.txt";
const fs::path kPstruct2 = scratch_dir() / "struct2.txt";
const fs::path kQcode = scratch_dir() / "mds.txt";
const fs::path kQstruct = scratch_dir() / "mds_struct.txt";

// Exported fixtures shared by the file-based test cases.
void ensure_fixtures() {
  static const bool built = [] {
    REQUIRE(run("phelps build --n 4 --shape 1,2 --enumerate --out " +
                kBincode.string() + " --struct-out " + kPstruct.string())
                .status == 0);
    REQUIRE(run("phelps build --n 4 --shape 2 --enumerate --out " +
                kBincode2.string() + " --struct-out " + kPstruct2.string())
                .status == 0);
    REQUIRE(run("mds build --n 4 --shape 1,2 --out " + kQcode.string() +
                " --struct-out " + kQstruct.string())
                .status == 0);
    return true;
  }();
  (void)built;
}

}  // namespace

TEST_CASE("usage errors", "[cli]") {
  CHECK(run("").status == 2);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("shapes --bogus").status == 2);
  CHECK(run("--help").status == 0);
  CHECK(run("phelps --help").status == 0);
  CHECK(run("verify propelinear --code x.txt").status == 2);  // missing flag
  CHECK(run("phelps verify --mode quick").status == 2);
}

TEST_CASE("shapes", "[cli]") {
  const RunResult r = run("shapes --n 4");
  CHECK(r.status == 0);
  CHECK(r.out == "compositions 4\npartitions 3\n");
  const RunResult r8 = run("shapes --n 8");
  CHECK(r8.status == 0);
  CHECK(r8.out == "compositions 64\npartitions 15\n");
}

TEST_CASE("bound", "[cli]") {
  CHECK(run("bound --target phelps --n 4").out == "0.762512\n");
  CHECK(run("bound --target phelps --n 64").out == "14389.9\n");
  CHECK(run("bound --target mds --n 5").out == "6.1001\n");
  CHECK(run("bound --target phelps --n 4").status == 0);
  CHECK(run("bound --n 1").status == 2);
  CHECK(run("bound --target bogus --n 4").status == 2);
}

TEST_CASE("member", "[cli]") {
  RunResult r = run("member --n 4 --shape 1,2 --word 1111000000000000");
  CHECK(r.status == 0);
  CHECK(r.out == "true\n");
  r = run("member --n 4 --shape 1,2 --word 1111000000000001");
  CHECK(r.status == 0);
  CHECK(r.out == "false\n");
  CHECK(run("member --n 4 --shape 1,2 --word 11110").status == 2);
  CHECK(run("member --n 4 --shape 1,2").status == 2);
  CHECK(run("member --target mds --n 4 --shape 1,2 --word 1232").out ==
        "true\n");
  CHECK(run("member --target mds --n 4 --shape 1,2 --word 1230").out ==
        "false\n");
}

TEST_CASE("phelps build", "[cli]") {
  RunResult r = run("phelps build --n 4 --shape 1,2");
  CHECK(r.status == 0);
  CHECK(r.out == "length 16\nsize_log2 11\n");

  r = run("phelps build --n 4 --shape 1,2 --out " +
          (scratch_dir() / "not_written.txt").string());
  CHECK(r.status == 2);  // --out requires --enumerate

  ensure_fixtures();
  const std::string code_text = slurp(kBincode);
  CHECK(code_text.substr(0, 31) == "BINCODE v1 length=16 size=2048\n");
  CHECK(line_count(code_text) == 2049);
  CHECK(slurp(kPstruct).substr(0, 21) == "PSTRUCT v1 length=16\n");
  CHECK(line_count(slurp(kPstruct)) == 2049);

  r = run("phelps build --n 4 --shape none --enumerate");
  CHECK(r.status == 0);
  CHECK(r.out.substr(0, 31) == "BINCODE v1 length=16 size=2048\n");
  CHECK(line_count(r.out) == 2049);

  r = run("phelps build --n 8 --shape 2,4 --enumerate");
  CHECK(r.status == 2);
  CHECK(r.err.substr(0, 7) == "error: ");
}

TEST_CASE("phelps verify", "[cli]") {
  RunResult r = run("phelps verify --n 4 --shape 1,2");
  CHECK(r.status == 0);
  CHECK(r.out == "RESULT pass\nCHECKED 4194304\nMODE exhaustive\n");

  r = run("phelps verify --n 8 --shape 2,4 --mode sampled --seed 7 "
          "--trials 100");
  CHECK(r.status == 0);
  CHECK(r.out ==
        "RESULT pass\nCHECKED 100\nMODE sampled seed=7 trials=100\n");

  CHECK(run("phelps verify --n 8 --shape 2,4").status == 2);  // budget
}

TEST_CASE("verify subcommands on files", "[cli]") {
  ensure_fixtures();
  RunResult r = run("verify propelinear --code " + kBincode.string() +
                    " --struct " + kPstruct.string());
  CHECK(r.status == 0);
  CHECK(r.out == "RESULT pass\nCHECKED 4194304\nMODE exhaustive\n");

  r = run("verify transitive --code " + kBincode.string() + " --struct " +
          kPstruct.string() + " --mode sampled --seed 3 --trials 250");
  CHECK(r.status == 0);
  CHECK(r.out == "RESULT pass\nCHECKED 250\nMODE sampled seed=3 trials=250\n");

  r = run("verify perfect --code " + kBincode.string());
  CHECK(r.status == 0);
  CHECK(r.out.substr(0, 12) == "RESULT pass\n");

  CHECK(run("verify perfect --code /nonexistent.txt").status == 2);
}

TEST_CASE("corrupted inputs are input errors", "[cli]") {
  ensure_fixtures();
  const fs::path bad_code = scratch_dir() / "bad_code.txt";
  const std::string good = slurp(kBincode);
  spit(bad_code, good.substr(0, good.size() - 4));  // truncated last word
  CHECK(run("verify perfect --code " + bad_code.string()).status == 2);

  const fs::path bad_struct = scratch_dir() / "bad_struct.txt";
  std::string s = slurp(kPstruct);
  s.replace(s.find(" | 1 "), 5, " | 0 ");
  spit(bad_struct, s);
  CHECK(run("verify propelinear --code " + kBincode.string() + " --struct " +
            bad_struct.string())
            .status == 2);

  // Structure words must match the code words exactly.
  CHECK(run("verify propelinear --code " + kBincode.string() + " --struct " +
            kPstruct2.string())
            .status == 2);

  const fs::path bad_qcode = scratch_dir() / "bad_mds.txt";
  spit(bad_qcode, "QCODE v1 length=4 size=64 shape=4:1,2\n0000\n");
  CHECK(run("mds verify --code " + bad_qcode.string()).status == 2);
}

TEST_CASE("mds build and verify", "[cli]") {
  ensure_fixtures();
  RunResult r = run("mds build --n 3 --shape 1");
  CHECK(r.status == 0);
  CHECK(r.out.substr(0, 36) == "QCODE v1 length=3 size=16 shape=3:1\n");

  CHECK(slurp(kQcode).substr(0, 38) == "QCODE v1 length=4 size=64 shape=4:1,2\n");
  CHECK(line_count(slurp(kQstruct)) == 65);

  r = run("mds verify --n 4 --shape 1,2");
  CHECK(r.status == 0);
  CHECK(r.out == "RESULT pass\nCHECKED 4160\nMODE exhaustive\n");

  r = run("mds verify --code " + kQcode.string());
  CHECK(r.status == 0);
  CHECK(r.out == "RESULT pass\nCHECKED 4160\nMODE exhaustive\n");

  r = run("mds verify --struct " + kQstruct.string() + " --n 4 --shape 1,2");
  CHECK(r.status == 0);
  CHECK(r.out == "RESULT pass\nCHECKED 4160\nMODE exhaustive\n");

  r = run("mds verify --n 8 --shape 2,4 --mode sampled --seed 5 --trials 200");
  CHECK(r.status == 0);
  CHECK(r.out == "RESULT pass\nCHECKED 200\nMODE sampled seed=5 trials=200\n");
}

TEST_CASE("analyze kernel rank weights", "[cli]") {
  ensure_fixtures();
  RunResult r = run("analyze kernel --n 4 --shape 1,2");
  CHECK(r.status == 0);
  CHECK(r.out == "kernel_size 512\nkernel_dim 9\n");

  r = run("analyze kernel --code " + kBincode.string());
  CHECK(r.status == 0);
  CHECK(r.out == "kernel_size 512\nkernel_dim 9\n");

  r = run("analyze kernel --target mds --n 4 --shape 1,2");
  CHECK(r.status == 0);
  CHECK(r.out == "kernel_size 16\ncharacterization_match true\n");

  CHECK(run("analyze rank --n 4 --shape 1,2").out == "rank 12\n");
  CHECK(run("analyze rank --n 4 --shape none").out == "rank 11\n");

  r = run("analyze weights --n 4 --shape 2");
  CHECK(r.status == 0);
  CHECK(r.out ==
        "weight 0 1\nweight 4 140\nweight 6 448\nweight 8 870\n"
        "weight 10 448\nweight 12 140\nweight 16 1\n");
}

TEST_CASE("analyze normalized", "[cli]") {
  ensure_fixtures();
  RunResult r = run("analyze normalized --code " + kBincode.string() +
                    " --struct " + kPstruct.string());
  CHECK(r.status == 0);
  CHECK(r.out.find("RESULT fail") != std::string::npos);
  CHECK(r.out.find("kernel_distinct_perms 2\n") != std::string::npos);
  CHECK(r.out.find("normalized_found 4\n") != std::string::npos);

  r = run("analyze normalized --code " + kBincode2.string() + " --struct " +
          kPstruct2.string());
  CHECK(r.status == 0);
  CHECK(r.out.find("RESULT pass") != std::string::npos);
  CHECK(r.out.find("kernel_distinct_perms 1\n") != std::string::npos);
  CHECK(r.out.find("normalized_found 1\n") != std::string::npos);

  r = run("analyze normalized --code " + kBincode.string() + " --struct " +
          kPstruct.string() + " --max-combinations 1");
  CHECK(r.status == 2);
}
