#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "nlpot/json_io.hpp"

namespace {

using nlpot::io::Json;

struct CliRun {
  int status = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(NLPOT_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string fixture(const char* name) { return std::string(NLPOT_FIXTURES) + "/" + name; }

TEST(Cli, ForwardConstantPotential) {
  const CliRun r = run("forward --input " + fixture("constant_unit.json") + " --window 40");
  ASSERT_EQ(r.status, 0) << r.out;
  const Json j = nlpot::io::parse(r.out);
  const auto& e = j["entries"];
  ASSERT_EQ(e.size(), 4u);
  const double zs[] = {1, 4, 16, 36};
  const int ms[] = {1, 2, 2, 2};
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(e[i]["z"].get<double>(), zs[i], 1e-14);
    EXPECT_EQ(e[i]["m"].get<int>(), ms[i]);
  }
  EXPECT_EQ(e[0]["tag"], "Sigma2");
}

TEST(Cli, ForwardTripleCoincidence) {
  const CliRun r = run("forward --input " + fixture("triple.json") + " --window 40");
  ASSERT_EQ(r.status, 0);
  const Json j = nlpot::io::parse(r.out);
  EXPECT_EQ(j["entries"][0]["m"], 3);
  EXPECT_EQ(j["entries"][0]["tag"], "Sigma0CapSigma2");
}

TEST(Cli, OutputIsByteIdentical) {
  const std::string args = "forward --input " + fixture("two_level.json") + " --window 200";
  EXPECT_EQ(run(args).out, run(args).out);
  const std::string inv = "inverse --input " + fixture("three_spectra_k1.json");
  EXPECT_EQ(run(inv).out, run(inv).out);
}

TEST(Cli, ValidateIdentities) {
  const CliRun r = run("validate --input " + fixture("constant_unit.json"));
  ASSERT_EQ(r.status, 0) << r.out;
  const Json j = nlpot::io::parse(r.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["checks"][0]["name"], "secular_identity");
  EXPECT_LE(j["checks"][0]["max_residual"].get<double>(), 1e-9);
}

TEST(Cli, InverseRoundTripFixture) {
  const CliRun r = run("inverse --input " + fixture("three_spectra_k1.json"));
  ASSERT_EQ(r.status, 0) << r.out;
  const Json j = nlpot::io::parse(r.out);
  EXPECT_NEAR(j["alpha"].get<double>(), 1.0, 1e-6);
  EXPECT_NEAR(j["potential"]["c0"].get<double>(), 0.6, 1e-6);
  EXPECT_NEAR(j["potential"]["terms"][0]["c"].get<double>(), 0.64, 1e-6);
  EXPECT_NEAR(j["potential"]["terms"][0]["s"].get<double>(), 0.48, 1e-6);
}

TEST(Cli, ForwardThenInverse) {
  const auto tmp = std::filesystem::temp_directory_path() / "nlpot_cli_three.json";
  const CliRun f = run("forward --input " + fixture("unnormalized.json") + " --truncation 32 --output " + tmp.string());
  ASSERT_EQ(f.status, 0) << f.out;
  const CliRun r = run("inverse --input " + tmp.string());
  ASSERT_EQ(r.status, 0) << r.out;
  const Json j = nlpot::io::parse(r.out);
  EXPECT_NEAR(j["alpha"].get<double>(), -1.5, 1e-6);
  EXPECT_NEAR(j["potential"]["c0"].get<double>(), 0.6, 1e-6);
  std::filesystem::remove(tmp);
}

TEST(Cli, SynthAcceptsAndRejects) {
  const CliRun ok = run("synth --input " + fixture("jp_two_level.json"));
  ASSERT_EQ(ok.status, 0) << ok.out;
  const Json j = nlpot::io::parse(ok.out);
  EXPECT_NEAR(j["operator"]["alpha"].get<double>(), 1.0, 1e-9);
  EXPECT_LE(j["max_deviation"].get<double>(), 1e-9);

  const CliRun bad = run("synth --input " + fixture("jp_one_gap.json"));
  EXPECT_EQ(bad.status, 1);
  const Json k = nlpot::io::parse(bad.out);
  EXPECT_FALSE(k["report"]["verdicts"]["interlacing"].get<bool>());
  EXPECT_TRUE(k["operator"].is_null());
}

TEST(Cli, OracleCompare) {
  const CliRun r = run("oracle-compare --input " + fixture("triple.json") + " --window 100");
  ASSERT_EQ(r.status, 0) << r.out;
  const Json j = nlpot::io::parse(r.out);
  EXPECT_TRUE(j["multiplicities_match"].get<bool>());
  EXPECT_LE(j["max_deviation"].get<double>(), 1e-8);
}

TEST(Cli, PlotCsv) {
  const auto tmp = std::filesystem::temp_directory_path() / "nlpot_cli_plot.csv";
  const CliRun r = run("validate --input " + fixture("two_level.json") + " --window 16 --emit-plot " + tmp.string());
  ASSERT_EQ(r.status, 0);
  std::ifstream in(tmp);
  std::string header, line;
  std::getline(in, header);
  EXPECT_EQ(header, "lambda,re_delta,residual");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 400);
  std::filesystem::remove(tmp);
}

TEST(Cli, ErrorDocuments) {
  const CliRun missing = run("forward --input /nonexistent/op.json");
  EXPECT_EQ(missing.status, 2);
  EXPECT_EQ(nlpot::io::parse(missing.out)["error"], "io");

  const CliRun schema = run("synth --input " + fixture("bad_tag.json"));
  EXPECT_EQ(schema.status, 2);
  const Json j = nlpot::io::parse(schema.out);
  EXPECT_EQ(j["error"], "schema");
  EXPECT_TRUE(j["detail"].is_object());

  const CliRun usage = run("forward --window nope");
  EXPECT_EQ(usage.status, 2);
  EXPECT_EQ(nlpot::io::parse(usage.out)["error"], "usage");

  const CliRun inconsistent = run("inverse --input " + fixture("three_spectra_k1.json") + " --order 40");
  EXPECT_EQ(inconsistent.status, 2);
  EXPECT_EQ(nlpot::io::parse(inconsistent.out)["error"], "rejection");
}

}  // namespace
