#include <gtest/gtest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "dcx/cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
  json doc() const { return json::parse(out); }
};

Result dcx_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dcx::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kFat = std::string(DCX_SOURCE_DIR) + "/corpus/fat.toml";

}  // namespace

TEST(Cli, InvariantsOfCanonical) {
  auto r = dcx_run({"invariants", "--ring", kFat, "--module", "builtin:canonical"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto d = r.doc();
  for (const char* key : {"command", "inputs", "results", "certificates", "seed", "version"})
    EXPECT_TRUE(d.contains(key)) << key;
  EXPECT_EQ(d["results"]["module"]["length"], 3);
  EXPECT_EQ(d["results"]["module"]["min_gens"], 2);
  EXPECT_EQ(d["results"]["module"]["socle"], 1);
  EXPECT_EQ(d["results"]["type"], 1);
  EXPECT_EQ(d["seed"], 0xDC0DE);
  EXPECT_EQ(d["inputs"]["ring"]["sha256"].get<std::string>().size(), 64u);
  EXPECT_EQ(d["certificates"]["bass"]["kind"], "Exact");
}

TEST(Cli, TheoremAnni) {
  auto r = dcx_run({"theorem", "anni", "--ring", kFat, "--C", "builtin:canonical"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.doc()["results"]["conclusion"], "consistent");
  auto t = dcx_run({"theorem", "tak", "--ring", "builtin:fat", "--C", "builtin:free:1"});
  EXPECT_EQ(t.code, 0);
  EXPECT_EQ(t.doc()["results"]["conclusion"], "hypotheses_not_met");
  auto c = dcx_run({"theorem", "cut_regular", "--ring", "builtin:fat", "--x", "x"});
  EXPECT_EQ(c.code, 0) << c.err;
  EXPECT_NE(c.doc()["results"]["details"].get<std::string>().find("NoRegularElement"), std::string::npos);
}

TEST(Cli, ReportsAreByteDeterministic) {
  const std::vector<std::string> args = {"corpus", "run", "--rings", "d2,fat", "--threads", "2"};
  auto a = dcx_run(args);
  auto b = dcx_run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto d = a.doc();
  EXPECT_FALSE(d["results"]["cells"].empty());
  EXPECT_FALSE(d["results"]["summary"].contains("INCONSISTENT"));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(dcx_run({}).code, 1);
  EXPECT_EQ(dcx_run({"bogus"}).code, 1);
  EXPECT_EQ(dcx_run({"--help"}).code, 0);
  EXPECT_EQ(dcx_run({"invariants", "--ring", "/nonexistent.toml", "--module", "builtin:canonical"}).code, 1);
  EXPECT_EQ(dcx_run({"theorem", "nope", "--ring", "builtin:fat"}).code, 1);
  // k is not semidualizing: the precondition is an input error.
  EXPECT_EQ(dcx_run({"theorem", "bass_criterion", "--ring", "builtin:fat", "--C", "builtin:residue_field"}).code, 1);
  // β(k) over fat grows without a recurrence; a tiny budget leaves no conclusion.
  auto r = dcx_run({"resolve", "--ring", "builtin:fat", "--module", "builtin:residue_field", "--rank-budget", "5"});
  EXPECT_EQ(r.code, 3) << r.out;
  EXPECT_EQ(r.doc()["certificates"]["resolution"]["kind"], "UpToBound");
  auto p = dcx_run({"resolve", "--ring", "builtin:d2", "--module", "builtin:residue_field"});
  EXPECT_EQ(p.code, 0);
  EXPECT_EQ(p.doc()["certificates"]["resolution"]["kind"], "Periodic");
}

TEST(Cli, CorpusList) {
  auto r = dcx_run({"corpus", "list"});
  ASSERT_EQ(r.code, 0);
  auto rings = r.doc()["results"];
  ASSERT_EQ(rings.size(), 9u);
  for (const auto& ring : rings)
    if (ring["name"] == "fat") EXPECT_EQ(ring["type"], 2);
}
