#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;  // stdout and stderr together
};

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("p1_cli_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Result p1(const std::string& args, const fs::path& dir) {
  const fs::path log = dir / "log.txt";
  const std::string cmd = std::string(P1_EXE) + " " + args + " > " + log.string() + " 2>&1";
  const int st = std::system(cmd.c_str());
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, slurp(log)};
}

int csv_rows(const fs::path& p) {
  std::ifstream in(p);
  int n = 0;
  for (std::string line; std::getline(in, line);) n += !line.empty();
  return n - 1;
}

}  // namespace

TEST(Cli, Table1IsByteIdenticalAcrossRuns) {
  const fs::path d = scratch("t1");
  ASSERT_EQ(p1("table1 --out " + (d / "a").string(), d).code, 0);
  ASSERT_EQ(p1("table1 --out " + (d / "b").string(), d).code, 0);
  const std::string a = slurp(d / "a" / "table1.csv");
  EXPECT_EQ(a.rfind("n,r_asym,b_asym,r_num,b_num,rel_r,rel_b\n", 0), 0u);
  EXPECT_EQ(a, slurp(d / "b" / "table1.csv"));
}

TEST(Cli, UnknownKeyIsUsageError) {
  const fs::path d = scratch("bad");
  const Result r = p1("predict --set bogus=1 --out " + d.string(), d);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("bogus"), std::string::npos);
}

TEST(Cli, ConfigPrecedence) {
  const fs::path d = scratch("cfg");
  {
    std::ofstream cfg(d / "p.cfg");
    cfg << "# predictions\n[predict]\nn = 3\ninput = pole00\n";
  }
  const std::string base = "predict --config " + (d / "p.cfg").string() + " --out " + d.string();
  ASSERT_EQ(p1(base, d).code, 0);
  EXPECT_EQ(csv_rows(d / "predict.csv"), 3);
  ASSERT_EQ(p1(base + " --set n=4", d).code, 0);
  EXPECT_EQ(csv_rows(d / "predict.csv"), 4);
  ASSERT_EQ(p1(base + " --set n=4 --n 2", d).code, 0);
  EXPECT_EQ(csv_rows(d / "predict.csv"), 2);
  const auto m = nlohmann::json::parse(slurp(d / "predict.manifest.json"));
  EXPECT_EQ(m["config"]["n"], "2");
  EXPECT_EQ(m["config"]["input"], "pole00");
}

TEST(Cli, DegenerateClassifyExitsWithError) {
  const fs::path d = scratch("deg");
  const Result r = p1("classify --r 0 --b 0 --out " + d.string(), d);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("degenerate scaling"), std::string::npos);
  const auto j = nlohmann::json::parse(slurp(d / "classify.json"));
  EXPECT_TRUE(j["scaling"].is_null());
}

TEST(Cli, ConstantsPrintsC0) {
  const fs::path d = scratch("const");
  const Result r = p1("constants --out " + d.string(), d);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("C0 = 2.004860503264124"), std::string::npos);
  EXPECT_TRUE(fs::exists(d / "alpha_table.csv"));
}

TEST(Cli, StokesOfPoleSolutionZero) {
  const fs::path d = scratch("stokes");
  ASSERT_EQ(p1("stokes --r 2.57599830401602 --b 1.52725743064433 --out " + d.string(), d).code, 0);
  const auto j = nlohmann::json::parse(slurp(d / "stokes.json"));
  EXPECT_EQ(j["class"], "C");
  ASSERT_EQ(j["s"].size(), 5u);
  for (const auto& s : j["s"]) EXPECT_NEAR(s[1].get<double>(), -1.6180339887, 1e-7);
}
