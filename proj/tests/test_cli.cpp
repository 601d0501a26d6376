#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct Result {
  int status;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Result run(const std::string& args) {
  static int counter = 0;
  fs::path dir = fs::temp_directory_path() / ("cobord_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  fs::path out = dir / ("out" + std::to_string(counter));
  fs::path err = dir / ("err" + std::to_string(counter++));
  std::string cmd = std::string(COBORD_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
  int raw = std::system(cmd.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(out), slurp(err)};
}

TEST(Cli, ExpandAdditiveHasNoAlpha) {
  Result r = run("expand --law additive --order 5");
  ASSERT_EQ(r.status, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["law"], "additive");
  EXPECT_EQ(j["order"], 5);
  EXPECT_TRUE(j["alpha"].empty());
}

TEST(Cli, ExpandMultiplicative) {
  Result r = run("expand --law mult:1 --order 5");
  ASSERT_EQ(r.status, 0) << r.err;
  json j = json::parse(r.out);
  ASSERT_EQ(j["alpha"].size(), 1u);
  EXPECT_EQ(j["alpha"][0], (json{{"i", 1}, {"j", 1}, {"value", "1"}}));
}

TEST(Cli, ExpandMiscenko) {
  Result r = run("expand --law miscenko --order 6");
  ASSERT_EQ(r.status, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["alpha"][0]["value"], "-cp1");
  EXPECT_EQ(j["alpha"].size(), 15u);
}

TEST(Cli, BetaTable) {
  Result r = run("beta --law mult:1 --order 8");
  ASSERT_EQ(r.status, 0) << r.err;
  json j = json::parse(r.out);
  ASSERT_EQ(j["beta"].size(), 1u);
  EXPECT_EQ(j["beta"][0]["value"], "1");
}

TEST(Cli, VerifyLogDerivative) {
  Result r = run("verify log_derivative --law miscenko --order 10");
  ASSERT_EQ(r.status, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["identity"], "log_derivative");
  EXPECT_EQ(j["status"], "pass");
  EXPECT_TRUE(j["first_failing_degree"].is_null());
  EXPECT_TRUE(j["witness_term"].is_null());
}

TEST(Cli, VerifyAllInQuotient) {
  Result r = run("verify all --law mult:1 --order 10");
  ASSERT_EQ(r.status, 0) << r.err;
  json j = json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  for (const auto& rep : j) EXPECT_EQ(rep["status"], "pass") << rep["identity"];
}

TEST(Cli, VerifyAxioms) {
  Result r = run("verify axioms --law miscenko --order 8 --format text");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("identity=associativity"), std::string::npos);
  EXPECT_NE(r.out.find("status=pass"), std::string::npos);
}

TEST(Cli, QuotientIdentityNeedsIntegralLaw) {
  Result r = run("verify u_equals_ubar --law miscenko --order 6");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("usage error"), std::string::npos);
  EXPECT_EQ(run("verify u_equals_ubar --law mult:1/2 --order 6").status, 2);
  EXPECT_EQ(run("verify u_equals_ubar --law mult:3 --order 6").status, 0);
}

TEST(Cli, InvalidArguments) {
  Result bad_law = run("expand --law tangent --order 5");
  EXPECT_NE(bad_law.status, 0);
  EXPECT_NE(bad_law.err.find("unknown law"), std::string::npos);
  EXPECT_NE(run("expand --law mult:1/0 --order 5").status, 0);
  EXPECT_NE(run("expand --law additive --order 0").status, 0);
  EXPECT_NE(run("verify no_such_identity").status, 0);
  EXPECT_NE(run("chi grass --n 2 --k 3").status, 0);
  EXPECT_NE(run("chi bogus").status, 0);
  EXPECT_NE(run("").status, 0);
}

TEST(Cli, ChiCommands) {
  Result g = run("chi grass --n 4 --k 2");
  ASSERT_EQ(g.status, 0);
  EXPECT_EQ(json::parse(g.out)["chi"], 2);
  Result rec = run("chi recursion --max 10");
  ASSERT_EQ(rec.status, 0) << rec.err;
  json j = json::parse(rec.out);
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["cases"], 506);
  Result simp = run("chi simplicial");
  ASSERT_EQ(simp.status, 0) << simp.err;
  EXPECT_EQ(json::parse(simp.out)["chi"], 0);
}

TEST(Cli, IndexCommands) {
  Result k = run("index klein");
  ASSERT_EQ(k.status, 0) << k.err;
  EXPECT_EQ(json::parse(k.out)["statement"], "1 + (-1 + u) = u; eps = 0 = chi(KL) = 0");
  Result rp2 = run("index rp2 --format text");
  ASSERT_EQ(rp2.status, 0);
  EXPECT_NE(rp2.out.find("status: pass"), std::string::npos);
}

TEST(Cli, FailingCheckExitsNonzero) {
  fs::path sphere = fs::temp_directory_path() / ("cobord_sphere_" + std::to_string(::getpid()) + ".txt");
  std::ofstream(sphere) << "0 1 2\n0 1 3\n0 2 3\n1 2 3\n";
  Result r = run("index klein --file " + sphere.string());
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(json::parse(r.out)["status"], "fail");
  EXPECT_EQ(r.err.rfind("FAIL ", 0), 0u);
  fs::remove(sphere);
}

TEST(Cli, DeterministicOutput) {
  for (const std::string args : {"expand --law miscenko --order 8", "verify all --law mult:1 --order 8",
                                 "beta --law miscenko --order 7", "chi recursion --max 6"}) {
    Result a = run(args), b = run(args);
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.out, b.out) << args;
  }
}

TEST(Cli, TextIsDerivedFromJson) {
  Result j = run("chi grass --n 5 --k 2");
  Result t = run("chi grass --n 5 --k 2 --format text");
  json doc = json::parse(j.out);
  EXPECT_EQ(t.out, "check: grass\nn: 5\nk: 2\nchi: " + doc["chi"].dump() + "\n");
}

TEST(Cli, OutFile) {
  fs::path p = fs::temp_directory_path() / ("cobord_out_" + std::to_string(::getpid()) + ".json");
  Result r = run("expand --law mult:1 --order 4 --out " + p.string());
  ASSERT_EQ(r.status, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(json::parse(slurp(p))["alpha"].size(), 1u);
  fs::remove(p);
}

}  // namespace
