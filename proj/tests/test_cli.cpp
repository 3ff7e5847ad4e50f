#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "gallai_lab/coloring.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI with stdout captured; stderr is folded in when `merge` is set.
Run cli(const std::string& args, bool merge = false) {
  std::string cmd = std::string(GALLAI_LAB_CLI) + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(GALLAI_LAB_TEST_TMP) / ::testing::UnitTest::GetInstance()->current_test_info()->name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(dir_ / name) << text; }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenExtremalThenCheck) {
  ASSERT_EQ(cli("gen extremal-odd --ell 3 --k 2 -o " + path("g.txt")).code, 0);
  auto g = gallai_lab::read_coloring_file(path("g.txt"));
  EXPECT_EQ(g.order(), 12);
  EXPECT_NE(slurp(path("g.txt")).find("# recipe: {\"kind\":\"OddCycleExtremal\""), std::string::npos);

  auto r = cli("check " + path("g.txt") + " --cycle 7");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("absent in all colors"), std::string::npos);
}

TEST_F(Cli, GenRamseyLower) {
  ASSERT_EQ(cli("gen ramsey-lower --m 5 --n 5 -o " + path("w.txt")).code, 0);
  EXPECT_EQ(gallai_lab::read_coloring_file(path("w.txt")).order(), 8);
}

TEST_F(Cli, GenParameterErrorsNameTheFlag) {
  auto r = cli("gen extremal-odd --ell 3 --k 9", true);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("--k"), std::string::npos);
  EXPECT_NE(r.out.find("SizeLimitExceeded"), std::string::npos);

  r = cli("gen ramsey-lower --m 4 --n 5", true);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("--m"), std::string::npos);
  EXPECT_EQ(cli("gen bogus").code, 2);
  EXPECT_EQ(cli("").code, 2);
}

TEST_F(Cli, CheckFindsCycleAndReportsJson) {
  write("k7.txt", gallai_lab::serialize(gallai_lab::ColoredCompleteGraph::monochromatic(7, 1, 1)));
  auto r = cli("check " + path("k7.txt") + " --cycle 7");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("0 1 2 3 4 5 6"), std::string::npos);

  r = cli("check " + path("k7.txt") + " --cycle 7 --json");
  EXPECT_EQ(r.code, 1);
  auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["mono_cycles"].size(), 1u);
  EXPECT_EQ(j["mono_cycles"][0]["kind"], "MonoCycle");
  EXPECT_EQ(j["mono_cycles"][0]["color"], 1);
  EXPECT_EQ(j["mono_cycles"][0]["vertices"].size(), 7u);
  EXPECT_TRUE(j["rainbow_triangle"].is_null());
}

TEST_F(Cli, CheckParseErrorHasLineNumber) {
  write("bad.txt", "4 2\n1\n1 1\n1\n");
  auto r = cli("check " + path("bad.txt") + " --cycle 3", true);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("line 4: expected 3 entries"), std::string::npos);
  EXPECT_EQ(cli("check " + path("missing.txt")).code, 2);
}

TEST_F(Cli, PartitionJson) {
  ASSERT_EQ(cli("gen extremal-odd --ell 3 --k 2 -o " + path("g.txt")).code, 0);
  auto r = cli("partition " + path("g.txt") + " --json -o " + path("p.json"));
  EXPECT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["parts"].size(), 2u);
  EXPECT_EQ(j["between_colors"], nlohmann::json::array({2}));
  EXPECT_EQ(j["pair_colors"], nlohmann::json::parse("[[0,1,2]]"));
  EXPECT_EQ(nlohmann::json::parse(slurp(path("p.json"))), j);

  auto fine = nlohmann::json::parse(cli("partition " + path("g.txt") + " --finest --json").out);
  EXPECT_GE(fine["parts"].size(), 2u);

  write("rainbow.txt", "3 3\n1\n2 3\n");
  EXPECT_EQ(cli("partition " + path("rainbow.txt")).code, 1);
}

TEST_F(Cli, Lemmas) {
  write("k7.txt", gallai_lab::serialize(gallai_lab::ColoredCompleteGraph::monochromatic(7, 2, 1)));
  auto r = cli("lemmas dirac " + path("k7.txt") + " --json");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(nlohmann::json::parse(r.out)["kind"], "HamiltonCycle");

  r = cli("lemmas dirac " + path("k7.txt") + " --color 2 --json");
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(nlohmann::json::parse(r.out)["precondition"], "DiracPreconditionFailed");

  r = cli("lemmas eg-path " + path("k7.txt") + " --edges 4 --json");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(nlohmann::json::parse(r.out)["vertices"].size(), 5u);

  r = cli("lemmas colored-split " + path("k7.txt") + " --a 7 --b 2 --json");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(nlohmann::json::parse(r.out)["color"], 1);

  // A = {0,1}, B_1 = {2,3} with internal color 5, B_2 = {4}.
  write("cfg.txt", "5 5\n1\n1 1\n1 1 5\n2 2 1 1\n");
  r = cli("lemmas recolor " + path("cfg.txt") + " --k 3 --m 3 --part-a 0,1 --part-b 2,3 --part-b 4");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "5 3\n1\n1 1\n1 1 3\n2 2 1 1\n");
  r = cli("lemmas recolor " + path("cfg.txt") + " --k 3 --m 2 --part-a 0,1 --part-b 2,3 --part-b 4");
  EXPECT_EQ(r.code, 2);
}

TEST_F(Cli, SearchAndVerify) {
  auto r = cli("search ramsey --m 3 --n 3 --no-timing -o " + path("r.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("value: 6"), std::string::npos);
  auto j = nlohmann::json::parse(slurp(path("r.json")));
  EXPECT_EQ(j["value"], 6);
  EXPECT_EQ(j["witness_file"], "r.witness.txt");
  EXPECT_EQ(cli("verify " + path("r.json")).code, 0);

  // Replace the witness with a coloring that has a triangle in color 1.
  write("r.witness.txt", gallai_lab::serialize(gallai_lab::ColoredCompleteGraph::monochromatic(5, 2, 1)));
  EXPECT_EQ(cli("verify " + path("r.json")).code, 1);

  EXPECT_EQ(cli("search gallai --m 5 --k 9").code, 2);
  EXPECT_EQ(cli("search ramsey --m 3 --n 3 --n-max 12").code, 0);
  EXPECT_EQ(cli("search ramsey --m 2 --n 3").code, 2);
}

TEST_F(Cli, LimitsFromEnvironment) {
  auto r = cli("search ramsey --m 3 --n 3 --json --no-timing");
  EXPECT_EQ(nlohmann::json::parse(r.out)["params"]["n_max"], 9);
  r = cli("search ramsey --m 3 --n 3 --json --no-timing --limits 2=7");
  EXPECT_EQ(nlohmann::json::parse(r.out)["params"]["n_max"], 7);
  const std::string env = "GALLAI_LAB_LIMITS=2=8 ";
  std::string cmd = env + GALLAI_LAB_CLI + " search ramsey --m 3 --n 3 --json --no-timing";
  FILE* pipe = popen(cmd.c_str(), "r");
  ASSERT_TRUE(pipe);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  pclose(pipe);
  EXPECT_EQ(nlohmann::json::parse(out)["params"]["n_max"], 8);
}

TEST_F(Cli, SeededCommandsAreByteReproducible) {
  for (int i = 0; i < 2; ++i) {
    ASSERT_EQ(cli("gen random --n 30 --k 4 --seed 17 -o " + path("a" + std::to_string(i) + ".txt")).code, 0);
  }
  EXPECT_EQ(slurp(path("a0.txt")), slurp(path("a1.txt")));
  EXPECT_NE(cli("gen random --n 30 --k 4 --seed 18").out, slurp(path("a0.txt")));
}

TEST_F(Cli, WrittenFilesAreReadable) {
  ASSERT_EQ(cli("gen random --n 12 --k 3 --seed 1 -o " + path("g.txt")).code, 0);
  EXPECT_EQ(cli("check " + path("g.txt") + " --cycle 5").code == 2, false);
  ASSERT_EQ(cli("search gallai --m 5 --k 1 -o " + path("s.json")).code, 0);
  EXPECT_EQ(cli("verify " + path("s.json")).code, 0);
  EXPECT_EQ(cli("check " + path("s.witness.txt") + " --cycle 5").code, 0);
}
