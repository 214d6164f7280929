#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "kcompound/cli/app.hpp"
#include "kcompound/cli/expression.hpp"
#include "kcompound/cli/json_output.hpp"
#include "kcompound/cli/problem.hpp"
#include "test_support.hpp"

using namespace kcompound;
using namespace kcompound::cli;

namespace {

struct Invocation {
  int code = -1;
  std::string out;
  std::string err;
};

Invocation kcomp(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Invocation r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << content;
  return path;
}

nlohmann::json parse(const std::string& text) { return nlohmann::json::parse(text); }

}  // namespace

TEST(Expression, ExampleFiveMatrix) {
  const DenseMatrix a = parse_matrix_expression("[[-1,0],[-2*cos(t),0]]", 0.0);
  EXPECT_EQ(a, (DenseMatrix{{-1.0, 0.0}, {-2.0, 0.0}}));
  const DenseMatrix b = parse_matrix_expression("[[-1,0],[-2*cos(t),0]]", 1.0);
  EXPECT_DOUBLE_EQ(b(1, 0), -2.0 * std::cos(1.0));
}

TEST(Expression, ZeroScalarMatrix) {
  EXPECT_EQ(parse_matrix_expression("[[0]]", 3.0), DenseMatrix(1, 1));
}

TEST(Expression, GrammarCoverage) {
  EXPECT_DOUBLE_EQ(ScalarExpression::parse("1 + 2*3 - 4/2").evaluate(0), 5.0);
  EXPECT_DOUBLE_EQ(ScalarExpression::parse("-(1+2)*-2").evaluate(0), 6.0);
  EXPECT_DOUBLE_EQ(ScalarExpression::parse("exp(t) + sin(pi/2)").evaluate(0), 2.0);
  EXPECT_DOUBLE_EQ(ScalarExpression::parse("1.5e-3").evaluate(0), 1.5e-3);
  EXPECT_DOUBLE_EQ(ScalarExpression::parse("2E+2").evaluate(0), 200.0);
  EXPECT_TRUE(ScalarExpression::parse("cos(2*t)").depends_on_t());
  EXPECT_FALSE(MatrixExpression::parse("[[1, pi]]").depends_on_t());
}

TEST(Expression, ErrorsCarryPosition) {
  try {
    parse_matrix_expression("[[1, tan(t)]]", 0.0);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
    EXPECT_NE(std::string(e.what()).find("tan"), std::string::npos);
  }
  EXPECT_THROW(parse_matrix_expression("[[1, 2], [3]]", 0.0), ParseError);
  EXPECT_THROW(parse_matrix_expression("[[1 2]]", 0.0), ParseError);
  EXPECT_THROW(parse_matrix_expression("[[1, 2]", 0.0), ParseError);
  EXPECT_THROW(parse_matrix_expression("[[1]] x", 0.0), ParseError);
  EXPECT_THROW(ScalarExpression::parse("1 +"), ParseError);
  EXPECT_THROW(ScalarExpression::parse("2^3"), ParseError);
}

TEST(Expression, SerializeParseRoundTrip) {
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<int> dim(1, 5);
  std::uniform_real_distribution<double> expo(-20.0, 20.0);
  for (int trial = 0; trial < 50; ++trial) {
    DenseMatrix a = kcompound::testing::random_matrix(dim(rng), dim(rng), rng, -1.0, 1.0);
    for (double& v : a.data()) v *= std::pow(10.0, expo(rng));
    const std::string once = serialize_matrix_literal(a);
    const DenseMatrix back = parse_matrix_expression(once, 0.0);
    EXPECT_EQ(back, a);
    EXPECT_EQ(serialize_matrix_literal(back), once);
  }
}

TEST(JsonOutput, CanonicalAndDigest) {
  nlohmann::json j = {{"b", 0.1}, {"a", {1, 2}}, {"c", nullptr}, {"d", std::nan("")}};
  const std::string text = canonical_dump(j);
  EXPECT_EQ(text, "{\n  \"a\": [1, 2],\n  \"b\": 0.10000000000000001,\n  \"c\": null,\n  \"d\": null\n}\n");
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(Problem, LoadsAndValidates) {
  Params p;
  p.command = "certify";
  load_problem_text(R"({"schema_version": 1, "task": "certify", "system": {"builtin": "example8"},
                        "parameters": {"k": 2, "property": "k-positive", "t_span": "0:2*pi"}})",
                    "inline", p);
  EXPECT_EQ(*p.builtin, "example8");
  EXPECT_EQ(*p.k, 2u);
  EXPECT_NEAR(p.t_span->end, 2.0 * std::acos(-1.0), 1e-15);
}

TEST(Problem, Diagnostics) {
  auto error_of = [](const std::string& text, const std::string& command = "certify") {
    Params p;
    p.command = command;
    try {
      load_problem_text(text, "f.json", p);
    } catch (const ProblemError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(error_of("{\n  \"schema_version\": 1,\n  oops\n}").find("f.json:3:"), std::string::npos);
  EXPECT_NE(error_of(R"({"schema_version": 2, "task": "certify", "system": "example8"})").find("schema_version"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"schema_version": 1, "task": "measure", "system": "example8"})").find("task"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"schema_version": 1, "task": "certify", "system": "example8", "parameters": {"k": -1}})")
                .find("parameters.k"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"schema_version": 1, "task": "certify", "system": "example8", "parameters": {"kk": 1}})")
                .find("parameters.kk"),
            std::string::npos);
  EXPECT_NE(
      error_of(R"({"schema_version": 1, "task": "certify", "system": {"builtin": "example8", "matrix": [[1]]}})")
          .find("exactly one"),
      std::string::npos);
  EXPECT_NE(error_of(R"j({"schema_version": 1, "task": "certify", "system": [[1, "cosh(t)"]]})j").empty(), false);
}

TEST(Problem, MatrixLiteralWithExpressions) {
  const MatrixExpression m = matrix_from_json(nlohmann::json::parse(R"j([[-1, 0], ["-2*cos(t)", 0]])j"), "system");
  EXPECT_TRUE(m.depends_on_t());
  EXPECT_EQ(m.evaluate(0.0), (DenseMatrix{{-1.0, 0.0}, {-2.0, 0.0}}));
  EXPECT_THROW(matrix_from_json(nlohmann::json::parse(R"j([[1, "tan(t)"]])j"), "system"), ProblemError);
  EXPECT_THROW(matrix_from_json(nlohmann::json::parse(R"([[1, 2], [3]])"), "system"), ProblemError);
}

TEST(Cli, CertifyExampleEight) {
  const Invocation r = kcomp({"certify", "--builtin", "example8", "--k", "2", "--property", "k-positive"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = parse(r.out);
  EXPECT_EQ(j["verdict"], "Certified");
  EXPECT_EQ(j["task"], "certify");
  EXPECT_TRUE(j.contains("input_digest"));
  EXPECT_TRUE(j.contains("grid"));
  EXPECT_TRUE(j["timing_ms"].is_null());
}

TEST(Cli, RefutedExitsTwoWithWitness) {
  const Invocation r = kcomp({"certify", "--builtin", "example8", "--k", "1", "--property", "k-positive"});
  EXPECT_EQ(r.code, 2);
  const auto j = parse(r.out);
  EXPECT_EQ(j["verdict"], "Refuted");
  EXPECT_EQ(j["witness"]["entry"], nlohmann::json({1, 3}));
}

TEST(Cli, CompoundFromMatrixFile) {
  const std::string path = temp_file("ex8.json", "[[-1,1,-2],[0,1,0.1],[-3,0,1]]");
  const Invocation r = kcomp({"compound", "--matrix-file", path, "--k", "2", "--kind", "additive"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto m = parse(r.out)["result_matrix"];
  EXPECT_EQ(m, nlohmann::json::parse("[[0,0.1,2],[0,0,1],[3,0,2]]"));
}

TEST(Cli, MultiplicativeCompoundReportsSignRegularity) {
  const Invocation r = kcomp({"compound", "--matrix", "[[2,1],[1,2]]", "--k", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse(r.out)["sign_regularity"], "Positive");
}

TEST(Cli, VolumeCsvMatchesExponential) {
  const Invocation r = kcomp({"simulate", "--builtin", "example5", "--task", "volume", "--k", "2", "--t-span", "0:2"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,volume");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    const double t = std::stod(line.substr(0, comma));
    const double v = std::stod(line.substr(comma + 1));
    EXPECT_NEAR(v, std::exp(-t), 1e-4 * std::exp(-t));
    ++rows;
  }
  EXPECT_EQ(rows, 2001u);
  EXPECT_EQ(r.out.find('\r'), std::string::npos);
}

TEST(Cli, CsvToFileAndReportToStdout) {
  const std::string csv = ::testing::TempDir() + "trace.csv";
  const Invocation r = kcomp({"trace", "--builtin", "example8", "--x0", "4,-21,-1", "--t-span", "0:1", "--csv", csv});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = parse(r.out);
  EXPECT_EQ(j["max_s_minus"], 1);
  EXPECT_EQ(j["s_minus_initial"], 1);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "t,s_minus,s_plus");
}

TEST(Cli, SimulateStateAndTransition) {
  const Invocation s = kcomp({"simulate", "--builtin", "thomas", "--x0", "1,-2,1", "--t-span", "0:1", "--step", "0.1"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(s.out.substr(0, s.out.find('\n')), "t,x1,x2,x3");
  const Invocation tr = kcomp({"simulate", "--builtin", "example5", "--task", "transition", "--t-span", "0:1",
                               "--out", ::testing::TempDir() + "tr.json"});
  ASSERT_EQ(tr.code, 0) << tr.err;
  EXPECT_EQ(tr.out.substr(0, tr.out.find('\n')), "t,phi_1_1,phi_1_2,phi_2_1,phi_2_2");
  const Invocation bad = kcomp({"simulate", "--builtin", "thomas", "--task", "volume"});
  EXPECT_EQ(bad.code, 1);
}

TEST(Cli, ThomasAlphaContraction) {
  const Invocation ok = kcomp({"certify", "--builtin", "thomas", "--property", "alpha-contracting", "--s", "0.74",
                               "--norm", "l1"});
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_EQ(parse(ok.out)["grid"]["count"], 9261);
  const Invocation bad = kcomp({"certify", "--builtin", "thomas", "--property", "alpha-contracting", "--s", "0.70",
                                "--norm", "l1"});
  EXPECT_EQ(bad.code, 2);
}

TEST(Cli, MeasureAndDiagStability) {
  const Invocation m = kcomp({"measure", "--matrix", "[[-1,0],[-2,0]]", "--k", "1", "--norm", "l1"});
  ASSERT_EQ(m.code, 0) << m.err;
  EXPECT_EQ(parse(m.out)["value"], 1.0);
  const Invocation d = kcomp({"certify", "--matrix", "[[-1,0,0],[0,-1,0],[0,0,-1]]", "--k", "2", "--property",
                              "k-diag-stable", "--D", "1,1,1"});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_EQ(parse(d.out)["margin"], 4.0);
}

TEST(Cli, ProblemFileReportsAreByteIdentical) {
  const std::string path = temp_file("p.json", R"j({"schema_version": 1, "task": "certify",
      "system": {"matrix": [[-1, 0], ["-2*cos(t)", 0]]},
      "parameters": {"k": 2, "property": "k-contracting", "norm": "l2", "samples": 50}})j");
  const Invocation a = kcomp({"certify", "--problem", path});
  const Invocation b = kcomp({"certify", "--problem", path});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(parse(a.out)["margin"], 1.0);
  const Invocation wrong = kcomp({"measure", "--problem", path});
  EXPECT_EQ(wrong.code, 1);
  EXPECT_NE(wrong.err.find("task"), std::string::npos);
}

TEST(Cli, ErrorsExitOne) {
  EXPECT_EQ(kcomp({}).code, 1);
  EXPECT_EQ(kcomp({"certify", "--builtin", "nope", "--k", "1", "--property", "k-positive"}).code, 1);
  const Invocation parse_err = kcomp({"compound", "--matrix", "[[1, foo]]", "--k", "1"});
  EXPECT_EQ(parse_err.code, 1);
  EXPECT_NE(parse_err.err.find("position 5"), std::string::npos) << parse_err.err;
  const Invocation blow = kcomp({"simulate", "--matrix", "[[1000]]", "--x0", "1", "--t-span", "0:10", "--step", "0.1"});
  EXPECT_EQ(blow.code, 1);
  EXPECT_NE(blow.err.find("last good time"), std::string::npos) << blow.err;
}

TEST(Cli, Selftest) {
  const Invocation r = kcomp({"selftest"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(parse(r.out)["failures"], 0);
}

TEST(Cli, TimingFlag) {
  const Invocation r = kcomp({"measure", "--builtin", "example8", "--k", "2", "--timing"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(parse(r.out)["timing_ms"].is_number());
}
