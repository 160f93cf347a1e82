#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "adverbs/cli/cli.hpp"
#include "adverbs/error.hpp"

using namespace adverbs;
using nlohmann::json;

namespace {

const std::string data = ADVERBS_DATA_DIR;

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args, int expected_code) {
  args.insert(args.begin(), "--json");
  auto r = run(args);
  EXPECT_EQ(r.code, expected_code) << r.err;
  return json::parse(r.out);
}

}  // namespace

TEST(CliReport, JsonRoundTrip) {
  cli::Report r;
  r.command = {"equiv", "check", "a", "b"};
  r.verdicts = {{"one", Status::Proved, "", "3 steps"},
                {"two", Status::Refuted, "[DataEff.GetData x -> false] => false", ""},
                {"three", Status::Unknown, "", ""}};
  r.timing_ms = 1.5;
  r.data = {{"rounds", 2}};
  EXPECT_EQ(cli::report_from_json(cli::to_json(r)), r);
  EXPECT_EQ(cli::report_from_json(json::parse(cli::to_json(r).dump())), r);
}

TEST(CliReport, RefutedNeedsAWitness) {
  auto j = json::parse(R"({"command":[],"verdicts":[{"name":"a","status":"REFUTED"}],"timing_ms":0})");
  EXPECT_THROW(cli::report_from_json(j), Error);
  j["verdicts"][0]["status"] = "MAYBE";
  EXPECT_THROW(cli::report_from_json(j), Error);
  j["verdicts"][0]["status"] = "UNKNOWN";
  EXPECT_NO_THROW(cli::report_from_json(j));
}

TEST(CliRun, EveryReportParsesBack) {
  auto j = run_json({"circuit", "stats", data + "/circuits/pair.bool"}, 0);
  EXPECT_NO_THROW(cli::report_from_json(j));
  ASSERT_EQ(j["data"]["circuits"].size(), 2u);
  EXPECT_EQ(j["data"]["circuits"][1]["deep"]["depth"], 2);
}

TEST(CliRun, CircuitCheckMatchesPredictions) {
  auto j = run_json({"circuit", "check", data + "/circuits/and_true.bool", "--samples", "200"}, 0);
  auto report = cli::report_from_json(j);
  for (const auto& v : report.verdicts) {
    if (v.name.starts_with("(2)") || v.name.starts_with("(4)")) EXPECT_EQ(v.status, Status::Proved) << v.name;
    if (v.name == "(1) t = t & t [oracle]") EXPECT_EQ(v.status, Status::Refuted);
  }
}

TEST(CliRun, CommutationDependsOnTheory) {
  auto lhs = data + "/terms/and_xy.term", rhs = data + "/terms/and_yx.term";
  auto par = run_json({"equiv", "check", lhs, rhs, "--theory", "statically-in-parallel"}, 0);
  EXPECT_EQ(par["verdicts"][0]["status"], "PROVED");
  EXPECT_TRUE(par["data"].contains("derivation"));

  auto file = std::filesystem::temp_directory_path() / "adverbs_cli_comm.deriv";
  std::ofstream(file) << par["data"]["derivation"].get<std::string>();
  auto given = run_json({"equiv", "check", lhs, rhs, "--theory", "StaticallyInParallel", "--depth", "0",
                         "--derivation", file.string()},
                        0);
  EXPECT_NE(given["verdicts"][0]["detail"].get<std::string>().find("given derivation accepted"), std::string::npos);
  // Handed to a theory without commutation, the same tree is rejected.
  auto rejected = run_json({"equiv", "check", lhs, rhs, "--depth", "0", "--derivation", file.string()}, 1);
  EXPECT_NE(rejected["verdicts"][0]["detail"].get<std::string>().find("rejected"), std::string::npos);
  std::filesystem::remove(file);

  auto seq = run_json({"equiv", "check", lhs, rhs}, 1);
  EXPECT_EQ(seq["verdicts"][0]["status"], "REFUTED");
  EXPECT_FALSE(seq["verdicts"][0]["witness"].get<std::string>().empty());
}

TEST(CliRun, InlineTermsAndRefinement) {
  auto j = run_json({"refine", "check", "(pure true)", "(kplus (pure true))", "--theory", "Repeatedly"}, 0);
  EXPECT_EQ(j["verdicts"][0]["status"], "PROVED");
  auto k = run_json({"refine", "check", "(pure true)", "(pure false)", "--theory", "repeatedly"}, 1);
  EXPECT_EQ(k["verdicts"][0]["status"], "REFUTED");
}

TEST(CliRun, HaxlRounds) {
  auto prog = data + "/haxl/batched.term", db = data + "/haxl/db.json";
  EXPECT_EQ(run_json({"haxl", "analyze", prog, "--db", db}, 0)["data"]["rounds"], 1);
  EXPECT_EQ(run_json({"haxl", "analyze", prog, "--db", db, "--sequential"}, 0)["data"]["rounds"], 2);
  auto missing = run({"haxl", "analyze", prog, "--db", R"({"x": true})"});
  EXPECT_EQ(missing.code, 2);
  EXPECT_NE(missing.err.find("UnboundVar"), std::string::npos);
}

TEST(CliRun, ServerChain) {
  auto j = run_json({"server", "verify", "--reverse"}, 0);
  ASSERT_EQ(j["data"]["links"].size(), 5u);
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(j["data"]["links"][i]["verdict"], "PROVED");
    EXPECT_EQ(j["data"]["links"][i]["boundUsed"]["right"], 4);
  }
  EXPECT_EQ(j["data"]["links"][4]["verdict"], "REFUTED");
  EXPECT_TRUE(j["data"]["links"][4].contains("witness"));
  // Too small a right bound cannot cover a loop over four elements.
  auto small = run_json({"server", "verify", "--conns", "3", "--bound-l", "1", "--bound-r", "2"}, 1);
  EXPECT_EQ(small["verdicts"][1]["status"], "UNKNOWN");
}

TEST(CliRun, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"circuit"}).code, 2);
  EXPECT_EQ(run({"equiv", "check", "(pure true)"}).code, 2);
  EXPECT_EQ(run({"equiv", "check", "(pure true)", "(pure true)", "--theory", "sometimes"}).code, 2);
  EXPECT_EQ(run({"circuit", "stats", data + "/no_such_file"}).code, 2);
  auto bad = run({"equiv", "check", "(pure true", "(pure true)"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}
