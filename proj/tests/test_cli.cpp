#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "freezm_cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Run run(std::vector<std::string> args, const std::string& stdin_text = "") {
  args.insert(args.begin(), "freezm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = freezm::cli::run_cli(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, RingMul) {
  const auto r = run({"ring", "mul", "--m", "5", "--input", R"({"x": [1, 1, 0, 0, 0], "y": [0, -1, 0, -1, 0]})"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.doc()["product"]["coeffs"], json({0, -1, -1, -1, -1}));
}

TEST(Cli, RingFromStdin) {
  const auto r = run({"ring", "aug"}, R"({"x": {"m": 5, "coeffs": [1, 1, 0, 1, 0]}})");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.doc()["augmentation"], 3);
}

TEST(Cli, RingDivideError) {
  const auto r = run({"ring", "divide", "--m", "4", "--input", R"({"x": [1, -1, 0, 0], "d": [1, 1, 1, 1]})"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.doc()["error"]["kind"], "NotDivisible");
}

TEST(Cli, RingNormalize) {
  const auto r = run({"ring", "normalize", "--m", "5", "--input", R"({"generators": [[2,0,0,0,0], [1,-1,0,0,0]]})"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.doc();
  EXPECT_EQ(j.dump().find("\"l\":2") != std::string::npos, true) << j.dump();
}

TEST(Cli, FormVerify) {
  const std::string in =
      R"({"m": 5, "S": [[[1,0,0,0,0],[0,0,0,0,0],[0,0,0,0,0],[0,0,0,0,0]],
                        [[0,0,0,0,0],[1,0,0,0,0],[1,1,1,1,1],[0,0,0,0,0]]],
                 "U": [[[0,0,0,0,0],[0,0,0,0,0],[1,0,0,0,0],[0,0,0,0,0]],
                       [[0,0,0,0,0],[0,0,0,0,0],[0,0,0,0,0],[1,0,0,0,0]]]})";
  const auto ok = run({"--json", "form", "verify", "--sign", "-1", "--input", in});
  EXPECT_EQ(ok.code, 0) << ok.out << ok.err;
  EXPECT_TRUE(ok.err.empty());

  json bad = json::parse(in);
  bad["U"][0] = bad["S"][1];
  bad["U"][0][2] = json({0, 0, 0, 0, 0});
  const auto no = run({"form", "verify", "--sign", "-1", "--input", bad.dump()});
  EXPECT_EQ(no.code, 4) << no.out;
}

TEST(Cli, FormTransvection) {
  const auto r = run({"form", "transvection", "--m", "3", "--rank", "2", "--sign", "-1", "--input",
                      R"({"kind": "EF", "i": 1, "j": 2, "c": [0, 1, 0]})"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
}

TEST(Cli, LagrangianSolve) {
  const auto r = run({"lagrangian", "solve", "--branch", "odd-m", "--m", "5", "--spec",
                      R"({"a1": [0,0,0,0,0], "a2": [1,0,0,0,0], "b2": [0,0,0,0,0]})"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  const auto j = r.doc();
  EXPECT_TRUE(j.dump().find("\"passed\":true") != std::string::npos);

  const auto bad = run({"lagrangian", "solve", "--branch", "odd-m", "--m", "5", "--spec",
                        R"({"a1": [0,0,0,0,0], "a2": [0,0,0,0,0], "b2": [0,0,0,0,0]})"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.doc()["error"]["kind"], "PreconditionFailed");
}

TEST(Cli, LagrangianSweepJobsAgree) {
  const auto a = run({"--json", "--seed", "4", "lagrangian", "sweep", "--m", "3", "--count", "8"});
  const auto b = run({"--json", "--seed", "4", "--jobs", "2", "lagrangian", "sweep", "--m", "3", "--count", "8"});
  ASSERT_EQ(a.code, 0) << a.out << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, Ahss) {
  const auto sq = run({"ahss", "sq", "--m", "2", "--k", "2", "--class", "x^3"});
  ASSERT_EQ(sq.code, 0) << sq.out << sq.err;
  EXPECT_TRUE(sq.out.find("x^5") != std::string::npos) << sq.out;

  const auto rep = run({"ahss", "report", "--m", "2"});
  ASSERT_EQ(rep.code, 0) << rep.err;
  EXPECT_EQ(rep.doc()["provenance"], "COMPUTED+PAPER_CITED");
  const auto odd = run({"ahss", "report", "--m", "3"});
  EXPECT_EQ(odd.doc()["provenance"], "COMPUTED");

  const auto d2 = run({"ahss", "d2", "--m", "4", "--p", "6", "--twisted"});
  ASSERT_EQ(d2.code, 0) << d2.err;
  EXPECT_EQ(d2.doc()["rank"], 1);
}

TEST(Cli, CensusExitCodes) {
  EXPECT_EQ(run({"census", "--n", "3", "--m", "2", "--g", "3"}).code, 0);
  EXPECT_EQ(run({"census", "--n", "3", "--m", "2", "--g", "2"}).code, 2);
  const auto oor = run({"census", "--n", "4", "--m", "6", "--g", "5"});
  EXPECT_EQ(oor.code, 3);
  EXPECT_EQ(oor.doc()["class_count"], "OUT_OF_RANGE");
  const auto seven = run({"census", "--n", "5", "--m", "7", "--g", "8", "--pontryagin", "3"});
  EXPECT_EQ(seven.code, 0);
  EXPECT_EQ(seven.doc()["class_count"], 7);
}

TEST(Cli, Selftest) {
  const auto a = run({"--json", "--seed", "1", "selftest", "--scope", "ring"});
  EXPECT_EQ(a.code, 0) << a.out;
  const auto b = run({"--json", "--seed", "1", "selftest", "--scope", "ring"});
  auto strip = [](json j) {
    j.erase("elapsed_seconds");
    return j;
  };
  EXPECT_EQ(strip(a.doc()), strip(b.doc()));
  const auto c1 = run({"--json", "--seed", "1", "selftest", "--scope", "census"});
  const auto c2 = run({"--json", "--seed", "99", "selftest", "--scope", "census"});
  EXPECT_EQ(strip(c1.doc())["suites"][0]["passed"], strip(c2.doc())["suites"][0]["passed"]);
}

TEST(Cli, Usage) {
  EXPECT_NE(run({}).code, 0);
  EXPECT_NE(run({"census", "--n", "3"}).code, 0);
  EXPECT_EQ(run({"--help"}).code, 0);
}
