#include <gtest/gtest.h>

#include "nilcurv/io.hpp"

using namespace nilcurv;

TEST(MatrixJson, RoundTrip) {
  Rng rng = stream_for(71, 0);
  const ComplexMatrix a = random_gaussian(4, 4, rng);
  const json j = matrix_to_json(a);
  EXPECT_EQ(j["n"], 4);
  EXPECT_EQ(j["re"].size(), 16u);
  EXPECT_EQ(matrix_from_json(j), a);
  EXPECT_EQ(matrix_from_json(json::parse(j.dump())), a);
}

TEST(MatrixJson, Rejects) {
  EXPECT_THROW(matrix_from_json(json::parse(R"({"n": 2, "re": [1, 2, 3], "im": [0, 0, 0]})")), parse_error);
  EXPECT_THROW(matrix_from_json(json::parse(R"({"n": 0, "re": [], "im": []})")), parse_error);
  EXPECT_THROW(matrix_from_json(json::parse(R"({"re": [1], "im": [0]})")), parse_error);
  EXPECT_THROW(matrix_from_json(json::parse(R"({"n": 1, "re": ["a"], "im": [0]})")), parse_error);
  EXPECT_THROW(matrix_from_json(json::parse("[1, 2]")), parse_error);
}

TEST(MatrixText, RoundTrip) {
  Rng rng = stream_for(72, 0);
  ComplexMatrix a = random_gaussian(3, 3, rng);
  a(0, 0) = Complex(1e-300, -2.5e-7);
  a(1, 1) = Complex(-0.0, 0.0);
  const std::string text = matrix_to_text(a);
  EXPECT_EQ(matrix_from_text(text), a);
}

TEST(MatrixText, Tokens) {
  EXPECT_EQ(parse_complex_token("1.5+2i"), Complex(1.5, 2.0));
  EXPECT_EQ(parse_complex_token("-0.25-3i"), Complex(-0.25, -3.0));
  EXPECT_EQ(parse_complex_token("1e-05+3e-07i"), Complex(1e-5, 3e-7));
  EXPECT_EQ(parse_complex_token("-1E+02-1E-02i"), Complex(-100.0, -0.01));
  EXPECT_THROW(parse_complex_token("1.5"), parse_error);
  EXPECT_THROW(parse_complex_token("1.5i"), parse_error);
  EXPECT_THROW(parse_complex_token("x+yi"), parse_error);
  EXPECT_THROW(matrix_from_text("1+0i 0+0i\n0+0i\n"), parse_error);
  EXPECT_THROW(matrix_from_text("\n"), parse_error);
}

TEST(VerificationReportJson, RoundTripAndTimingIsolated) {
  VerifyOptions opts;
  opts.samples = 100;
  opts.seed = 3;
  const VerificationReport r = verify_inequality(Partition({3, 1}), opts);
  const json j = to_json(r);
  EXPECT_EQ(j["bound"], "1/2");
  EXPECT_TRUE(j["timing"].contains("timestamp"));
  EXPECT_TRUE(j["timing"].contains("elapsed_seconds"));
  const VerificationReport back = verification_report_from_json(json::parse(j.dump()));
  EXPECT_EQ(back.bound, r.bound);
  EXPECT_EQ(back.min_observed, r.min_observed);
  EXPECT_EQ(back.worst_margin, r.worst_margin);
  EXPECT_EQ(back.violations, r.violations);
  EXPECT_EQ(back.spec, "3,1");
  EXPECT_EQ(back.timestamp, r.timestamp);
  EXPECT_THROW(verification_report_from_json(json::parse(R"({"kind": "partition"})")), parse_error);
}

TEST(BoundReportJson, RoundTrip) {
  const BoundReport r = make_bound_report(HodgeVector({1, 5, 3, 5, 1}));
  const json j = to_json(r);
  EXPECT_EQ(j["sharp_bound"], "-1/14");
  EXPECT_EQ(j["general_bound"], "-1/18");
  EXPECT_EQ(j["group"], "SO(5,10)");
  EXPECT_EQ(j["isotropy"], (std::vector<std::string>{"U(1)", "U(5)", "SO(3)"}));
  const BoundReport back = bound_report_from_json(json::parse(j.dump()));
  EXPECT_EQ(back.sharp_bound, r.sharp_bound);
  EXPECT_EQ(back.general_bound, r.general_bound);
  EXPECT_EQ(back.conjugate, r.conjugate);
  EXPECT_EQ(back.diagram, r.diagram);
  EXPECT_EQ(to_json(make_bound_report(HodgeVector({2, 2})))["general_bound"], nullptr);
}

TEST(MinimizeJson, Fields) {
  const MinimizeResult r = minimize_k_over_orbit(standard_nilpotent(Partition({2})));
  const json j = to_json(r);
  EXPECT_EQ(j["target"], "2/1");
  EXPECT_EQ(j["converged"], true);
  EXPECT_EQ(j["iterations"], 0);
  EXPECT_NEAR(j["min_estimate"].get<double>(), 2.0, 1e-15);
  EXPECT_EQ(matrix_from_json(j["argmin"]).rows(), 2);
}
