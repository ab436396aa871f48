#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "qgl/constructors.hpp"
#include "qgl/error.hpp"
#include "qgl/io.hpp"

namespace qgl {
namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  throw std::runtime_error("no error");
}

TEST(GroupoidIo, RoundTrip) {
  auto g = pair_times_cyclic(2, 2);
  auto h = parse_groupoid(write_groupoid(g));
  EXPECT_EQ(h.names(), g.names());
  EXPECT_EQ(h.mult_entries(), g.mult_entries());
  EXPECT_EQ(write_groupoid(h), write_groupoid(g));
}

TEST(GroupoidIo, DataFiles) {
  auto g = parse_groupoid(slurp(QGL_TEST_DATA "/pair3.json"));
  EXPECT_EQ(g.size(), 9);
  EXPECT_TRUE(validate_groupoid(g).verdict());
  EXPECT_FALSE(validate_groupoid(parse_groupoid(slurp(QGL_TEST_DATA "/broken_assoc.json"))).verdict());
  try {
    parse_groupoid(slurp(QGL_TEST_DATA "/missing_inverse.json"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
    EXPECT_NE(std::string(e.what()).find("(0,1)"), std::string::npos);
  }
}

TEST(GroupoidIo, MalformedJson) {
  EXPECT_EQ(kind_of([] { parse_groupoid(slurp(QGL_TEST_DATA "/truncated.json")); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { parse_groupoid("{\"elements\": [1]}"); }), ErrorKind::Parse);
  try {
    parse_groupoid("{\n  \"elements\": [,\n}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(TripleIo, RoundTrip) {
  auto base = matrix_base(2);
  auto solved = solve_separability_idempotent(base);
  auto [b2, E2] = parse_triple(write_triple(base, solved.candidate));
  EXPECT_EQ(b2.B.block_dims(), base.B.block_dims());
  EXPECT_LT((b2.R.matrix() - base.R.matrix()).norm(), 1e-15);
  EXPECT_LT(distance(b2.nu.density(), base.nu.density()), 1e-15);
  EXPECT_LT(distance(E2, solved.candidate), 1e-15);
}

TEST(QuantumGroupoidIo, RoundTripPreservesVerdict) {
  for (const auto& qg : {function_algebra_model(pair_groupoid(2)), convolution_algebra_model(cyclic_group(3))}) {
    const std::string text = write_quantum_groupoid(qg);
    auto back = parse_quantum_groupoid(text);
    EXPECT_EQ(write_quantum_groupoid(back), text);
    EXPECT_TRUE(verify_quantum_groupoid(back).verdict());
  }
}

TEST(QuantumGroupoidIo, GoldenPairGroupoidFunctionModel) {
  auto text = write_quantum_groupoid(function_algebra_model(parse_groupoid(slurp(QGL_TEST_DATA "/pair2.json"))));
  EXPECT_EQ(text, slurp(QGL_TEST_DATA "/pair2_function.golden.json"));
}

TEST(QuantumGroupoidIo, SchemaViolations) {
  auto text = write_quantum_groupoid(function_algebra_model(pair_groupoid(2)));
  EXPECT_EQ(kind_of([&] { parse_quantum_groupoid(text.substr(0, text.size() / 2)); }), ErrorKind::Parse);
  std::string wrong = text;
  wrong.replace(wrong.find(kDataFormat), std::string(kDataFormat).size(), "qgl-data-0");
  EXPECT_EQ(kind_of([&] { parse_quantum_groupoid(wrong); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { parse_quantum_groupoid("[]"); }), ErrorKind::Parse);
}

TEST(ReportIo, JsonRoundTripAndNullResidual) {
  VerificationReport r;
  r.add(make_check("a.b", "anchor one", 1e-12, 1e-9));
  r.add(make_verdict("a.c", "anchor two", false, std::numeric_limits<double>::infinity(), 1e-9, "boom"));
  auto text = write_report_json(r);
  EXPECT_NE(text.find("\"residual\": null"), std::string::npos);
  EXPECT_NE(text.find("\"schema\": \"qgl-report-1\""), std::string::npos);
  auto back = parse_report_json(text);
  ASSERT_EQ(back.checks().size(), 2u);
  EXPECT_EQ(back.checks()[1].detail, "boom");
  EXPECT_FALSE(back.verdict());
  EXPECT_EQ(write_report_json(back), text);
}

TEST(ReportIo, TextRendering) {
  VerificationReport r;
  r.add(make_check("x.ok", "first", 0.0, 1e-9));
  r.add(make_check("x.bad", "second", 1.0, 1e-9));
  auto text = write_report_text(r);
  EXPECT_NE(text.find("PASS  x.ok"), std::string::npos);
  EXPECT_NE(text.find("FAIL  x.bad"), std::string::npos);
  EXPECT_NE(text.find("verdict: false (2 checks, 1 failed)"), std::string::npos);
}

}  // namespace
}  // namespace qgl
