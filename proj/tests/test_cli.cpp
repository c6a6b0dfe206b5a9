#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("finitekit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Result run(const std::string& args) {
    const auto out = dir_ / "stdout.txt", err = dir_ / "stderr.txt";
    const std::string cmd = "cd '" + dir_.string() + "' && '" FINITEKIT_CLI "' " + args + " > '" + out.string() +
                            "' 2> '" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
  }

  void write(const std::string& name, const std::string& text) { std::ofstream(dir_ / name) << text; }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, ClassifyCube) {
  std::string csv = "n,cost\n";
  for (int n = 1; n <= 64; ++n) csv += std::to_string(n) + "," + std::to_string(n * n * n) + "\n";
  write("cube.csv", csv);
  const auto r = run("classify cube.csv --format text");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "Poly, PolyRank=3\n");
  const auto j = json::parse(run("classify cube.csv").out);
  EXPECT_EQ(j.at("level"), "Poly");
}

TEST_F(Cli, ClassifyConstant) {
  write("c.csv", "n,cost\n1,5\n2,5\n3,5\n4,5\n5,5\n6,5\n7,5\n8,5\n");
  const auto r = run("classify c.csv --format text");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "Const\n");
}

TEST_F(Cli, ClassifyErrors) {
  write("bad.csv", "n,cost\n1,1\n2,x\n");
  auto r = run("classify bad.csv");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
  write("nm.csv", "n,cost\n1,1\n2,5\n3,2\n");
  r = run("classify nm.csv");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("monotonicity violated at n=3"), std::string::npos) << r.err;
  EXPECT_EQ(run("classify missing.csv").code, 2);
}

TEST_F(Cli, RejectsUnknownFlagsAndPacks) {
  EXPECT_EQ(run("annex --bogus").code, 2);
  EXPECT_EQ(run("lookup nosuchpack").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("search sat --steps 5").code, 2);  // seed missing
}

TEST_F(Cli, LookupParity) {
  const auto r = run("lookup parity --n0 3");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.at("entries"), 15);
  EXPECT_EQ(j.at("correct"), j.at("queries"));
  EXPECT_LE(j.at("max_probes").get<int>(), 4);
  EXPECT_TRUE(fs::exists(dir_ / "parity_n03.hint"));
  EXPECT_EQ(fs::file_size(dir_ / "parity_n03.hint"), j.at("hint_bytes").get<std::size_t>());
}

TEST_F(Cli, SearchIsDeterministic) {
  const auto a = run("search sat --seed 7 --steps 300 --checkpoint one.json");
  const auto b = run("search sat --seed 7 --steps 300 --checkpoint two.json");
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out.substr(0, a.out.find("\"checkpoint\"")), b.out.substr(0, b.out.find("\"checkpoint\"")));
  EXPECT_EQ(slurp(dir_ / "one.json"), slurp(dir_ / "two.json"));
  run("search sat --seed 8 --steps 300 --checkpoint three.json");
  EXPECT_NE(slurp(dir_ / "one.json"), slurp(dir_ / "three.json"));
}

TEST_F(Cli, ResumeMatchesUninterrupted) {
  ASSERT_EQ(run("search parity --seed 3 --steps 1000 --checkpoint full.json").code, 0);
  ASSERT_EQ(run("search parity --seed 3 --steps 400 --checkpoint half.json").code, 0);
  ASSERT_EQ(run("search parity --resume half.json --steps 600 --checkpoint rest.json").code, 0);
  EXPECT_EQ(slurp(dir_ / "full.json"), slurp(dir_ / "rest.json"));
}

TEST_F(Cli, OptimalBudgetAndResume) {
  auto r = run("search allones --mode optimal --n0 2 --trial-budget 200");
  ASSERT_EQ(r.code, 3) << r.err;
  const auto j = json::parse(r.out);
  const std::string resume = j.at("resume_file");
  EXPECT_TRUE(fs::exists(dir_ / resume));
  int slices = 1;
  while (r.code == 3 && slices < 1000) {
    r = run("search allones --mode optimal --n0 2 --trial-budget 200000 --resume " + resume);
    ++slices;
  }
  ASSERT_EQ(r.code, 0) << r.err;
  const auto full = run("search allones --mode optimal --n0 2");
  ASSERT_EQ(full.code, 0);
  const auto a = json::parse(r.out), b = json::parse(full.out);
  EXPECT_EQ(a.at("trials"), b.at("trials"));
  EXPECT_EQ(a.at("best"), b.at("best"));
}

TEST_F(Cli, DoublingReportsHeuristic) {
  const auto r = run("doubling allones --window 5");
  EXPECT_TRUE(r.code == 0 || r.code == 3);
  const auto j = json::parse(r.out);
  EXPECT_NE(j.at("note").get<std::string>().find("heuristic"), std::string::npos);
  EXPECT_FALSE(j.at("rounds").empty());
}

TEST_F(Cli, Annex) {
  auto r = run("annex --format csv");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("ExpRank=1,1,SCC,10000000,16\n"), std::string::npos) << r.out.substr(0, 300);
  r = run("annex --format csv --divide-exp-by-8");
  EXPECT_NE(r.out.find("ExpRank=1,1,SCC,10000000,2\n"), std::string::npos);
  r = run("annex --profile custom:1e9:1 --format text");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("custom"), std::string::npos);
  EXPECT_EQ(run("annex --profile custom:nope").code, 2);
  EXPECT_EQ(run("annex --output t.csv --format csv").code, 0);
  EXPECT_EQ(slurp(dir_ / "t.csv"), run("annex --format csv").out);
  EXPECT_EQ(run("annex").out, run("annex").out);
}
