#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(JINV_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, {}};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

json report(const Run& r) { return json::parse(r.out); }

std::string write_tmp(const std::string& name, const std::string& text) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(Cli, GensP3) {
  const auto r = run("gens --p 3");
  ASSERT_EQ(r.code, 0);
  const auto j = report(r);
  EXPECT_EQ(j["schema"], "report_v1");
  EXPECT_EQ(j["subcommand"], "gens");
  EXPECT_EQ(j["results"]["count"], 11);
  EXPECT_EQ(j["results"]["count_by_degree"]["3"], 10);
  EXPECT_EQ(j["results"]["count_by_degree"]["6"], 1);
  EXPECT_TRUE(j["pass"]);
}

TEST(Cli, Poincare) {
  const auto r = run("poincare");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(report(r)["results"]["numerator"], json::array({1, 0, 1, 0, 1}));
}

TEST(Cli, Dims) {
  const auto r = run("dims --p 3 --degree 6");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(report(r)["results"]["total"], 56);
  const auto m = run("dims --p 3 --degree 6 --multidegree 2,2,2");
  ASSERT_EQ(m.code, 0);
  EXPECT_EQ(report(m)["results"]["total"], 5);
}

TEST(Cli, ResultsDeterministic) {
  for (const char* args : {"gens --p 4 --seed 7", "umbral --check 7.1 --samples 5 --seed 3", "invariance --p 2 --trials 10"}) {
    const auto a = report(run(args));
    const auto b = report(run(args));
    EXPECT_EQ(a["results"].dump(), b["results"].dump()) << args;
    EXPECT_EQ(a["parameters"].dump(), b["parameters"].dump()) << args;
  }
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("gens --bogus").code, 2);
  EXPECT_EQ(run("nosuch").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("dims --p notanumber").code, 2);
}

TEST(Cli, LabErrorExitsOneWithDiagnostic) {
  const auto r = run("umbral --check 9.9");
  EXPECT_EQ(r.code, 1);
  const auto j = report(r);
  EXPECT_FALSE(j["pass"]);
  EXPECT_TRUE(j.contains("diagnostic"));
}

TEST(Cli, NullconeFiles) {
  const auto shaped = write_tmp("nc_shaped.txt", "# e1, e12\n1 0 0 0 0 0\n0 0 0 1 0 0\n");
  const auto eq = run("nullcone --check-equations " + shaped);
  EXPECT_EQ(eq.code, 0);
  EXPECT_TRUE(report(eq)["results"]["equations_hold"]);

  const auto w = run("nullcone --witness " + shaped);
  ASSERT_EQ(w.code, 0);
  EXPECT_EQ(report(w)["results"]["exponents"], json::array({1, 1, -2}));

  const auto identity = write_tmp("nc_identity.txt", "1 1 1 0 0 0\n");
  EXPECT_EQ(run("nullcone --check-equations " + identity).code, 1);
  const auto bad = run("nullcone --witness " + identity);
  EXPECT_EQ(bad.code, 1);
  EXPECT_TRUE(report(bad).contains("diagnostic"));
}

TEST(Cli, UmbralExpression) {
  const auto r = run("umbral --expr '[a@x,b@x,c@x]^2'");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(report(r)["results"]["umbral_terms"], 5);
  EXPECT_EQ(run("umbral --expr '1 + $'").code, 1);
}

TEST(Cli, OutFile) {
  const std::string path = ::testing::TempDir() + "jinv_report.json";
  const auto r = run("poincare --out " + path);
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const auto j = json::parse(in);
  EXPECT_EQ(j["subcommand"], "poincare");
}
