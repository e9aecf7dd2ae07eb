#include <gtest/gtest.h>
#include <json.hpp>

#include "qlmor/error.hpp"
#include "qlmor/io.hpp"

using namespace qlmor;
using nlohmann::json;

namespace {

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::SolveFailure;
}

}  // namespace

TEST(Json, SystemRoundTripIsExact) {
  const RandomSystem rs = random_pr_system(3, 2, 4, true);
  const QuadratureModel back = io::system_from_json(io::to_json(rs.model));
  EXPECT_EQ(back.A(), rs.model.A());
  EXPECT_EQ(back.B(), rs.model.B());
  EXPECT_EQ(back.C(), rs.model.C());
  EXPECT_EQ(back.D(), rs.model.D());
  EXPECT_TRUE(back.pr_certified());
  const json j = json::parse(io::to_json(rs.model));
  EXPECT_EQ(j["n"], 3);
  EXPECT_EQ(j["n_y"], 4);
}

TEST(Json, SlhRoundTrip) {
  const RandomSystem rs = random_cp_system(2, 2, 1, true);
  const SlhParams p = io::slh_from_json(io::to_json(rs.slh));
  EXPECT_EQ(p.S, rs.slh.S);
  EXPECT_EQ(p.K, rs.slh.K);
  EXPECT_EQ(p.R, rs.slh.R);
}

TEST(Json, CertificationRecomputed) {
  json j = json::parse(io::to_json(build_network({})));
  j["B"][0][0] = 123.0;
  j["pr_certified"] = true;
  EXPECT_FALSE(io::system_from_json(j.dump()).pr_certified());
}

TEST(Json, MatrixForms) {
  RealMatrix M(2, 2);
  M << 4, 0, 0, 1;
  EXPECT_EQ(io::matrix_from_json("[[4, 0], [0, 1]]"), M);
  EXPECT_EQ(io::matrix_from_json(R"({"matrix": [[4, 0], [0, 1]]})"), M);
  EXPECT_EQ(io::matrix_from_json(io::matrix_to_json(M)), M);
}

TEST(Json, ParseErrors) {
  EXPECT_EQ(code_of([] { io::matrix_from_json("[[1, 2], [3]]"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { io::matrix_from_json("{not json"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { io::system_from_json(R"({"A": [[1]]})"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { io::matrix_from_json(R"([["a"]])"); }), ErrorCode::ParseError);
}

TEST(Json, ReportSchema) {
  const json j = json::parse(io::to_json(reduce(build_network({}), 3)));
  for (const char* key : {"kept", "nu", "bound", "exact_error", "hankel", "hurwitz_chain", "reduced"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["kept"], 3);
  EXPECT_NEAR(j["bound"].get<double>(), 0.1932, 1e-4);
  EXPECT_EQ(j["hankel"].size(), 10u);
  EXPECT_EQ(j["reduced"]["n"], 3);
}

TEST(Json, ErrorShape) {
  const json j = json::parse(io::to_json(Error(ErrorCode::NotHurwitz, "boom")));
  EXPECT_EQ(j["error"], "NotHurwitz");
  EXPECT_NE(j["message"].get<std::string>().find("boom"), std::string::npos);
}

TEST(Csv, RoundTripBitExact) {
  const FrequencyResponse fr = frequency_response(build_network({}), example_grid(12e6, 57));
  const std::string csv = io::to_csv(fr);
  EXPECT_EQ(csv.rfind("omega_rad_s,mag_ch1,phase_ch1_rad,mag_ch2,phase_ch2_rad\n", 0), 0u);
  const FrequencyResponse back = io::response_from_csv(csv);
  EXPECT_EQ(back.omega, fr.omega);
  EXPECT_EQ(back.mag1, fr.mag1);
  EXPECT_EQ(back.phase1, fr.phase1);
  EXPECT_EQ(back.mag2, fr.mag2);
  EXPECT_EQ(back.phase2, fr.phase2);
  EXPECT_EQ(code_of([] { io::response_from_csv("omega\n1,2\n"); }), ErrorCode::ParseError);
}
