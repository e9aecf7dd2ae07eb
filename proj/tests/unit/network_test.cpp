#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qlmor/error.hpp"
#include "qlmor/network.hpp"

using namespace qlmor;

namespace {

constexpr double kGamma = 12e6;

}  // namespace

TEST(Cavity, Model) {
  const QuadratureModel G = select_outputs(build_from_slh(build_cavity(kGamma)), {0});
  EXPECT_LT((G.A() + kGamma * RealMatrix::Identity(2, 2)).norm(), 1e-6);
  EXPECT_LT((G.C() - std::sqrt(kGamma) * RealMatrix::Identity(2, 2)).norm(), 1e-9);
  RealMatrix D = RealMatrix::Zero(2, 4);
  D.leftCols(2).setIdentity();
  EXPECT_EQ((G.D() - D).norm(), 0.0);
  EXPECT_TRUE(check_physical_realizability(G).passed());
}

TEST(Network, SingleCavity) {
  const QuadratureModel G = build_network({1, kGamma, 0.0});
  const QuadratureModel C = select_outputs(build_from_slh(build_cavity(kGamma)), {0});
  EXPECT_EQ(G.n(), 1);
  EXPECT_LT((G.A() - C.A()).norm(), 1e-6);
  // Single cavity: input ordering is (M1, M2) already.
  EXPECT_LT((G.B() - C.B()).norm(), 1e-9);
  EXPECT_THROW(build_network({0, kGamma, 0.0}), Error);
  EXPECT_THROW(build_network({3, -1.0, 0.0}), Error);
}

TEST(Network, FiveCavities) {
  const QuadratureModel G = build_network({});
  EXPECT_EQ(G.n(), 5);
  EXPECT_EQ(G.m(), 6);
  EXPECT_EQ(G.ny(), 2);
  EXPECT_TRUE(G.pr_certified());
  EXPECT_TRUE(is_completely_passive(G).passive);
}

TEST(Network, HankelIndependentOfGamma) {
  const GramianPair a = gramians(build_network({5, 1.0, 0.0}));
  const GramianPair b = gramians(build_network({5, kGamma, 0.0}));
  for (std::size_t k = 0; k < a.hankel.size(); ++k)
    EXPECT_NEAR(a.hankel[k], b.hankel[k], 1e-9 * a.hankel[k]);
}

TEST(Response, ChannelsIdentical) {
  const QuadratureModel G = build_network({});
  const FrequencyResponse fr = frequency_response(G, example_grid(kGamma));
  ASSERT_EQ(fr.omega.size(), 400u);
  for (std::size_t k = 0; k < fr.omega.size(); ++k) {
    EXPECT_NEAR(fr.mag1[k], fr.mag2[k], 1e-9);
    EXPECT_NEAR(fr.phase1[k], fr.phase2[k], 1e-9);
  }
}

TEST(Response, Grid) {
  const auto g = example_grid(kGamma, 400);
  EXPECT_NEAR(g.front(), 1e-2 * kGamma, 1e-6 * kGamma);
  EXPECT_NEAR(g.back(), 1e2 * kGamma, 1e-6 * kGamma);
}

TEST(Response, UnwrapPhase) {
  const double pi = std::numbers::pi;
  const auto u = unwrap_phase({3.0, -3.0, 3.0});
  EXPECT_NEAR(u[1], 2 * pi - 3.0, 1e-12);
  EXPECT_NEAR(u[2], 3.0, 1e-12);
  for (std::size_t k = 1; k < u.size(); ++k) EXPECT_LE(std::abs(u[k] - u[k - 1]), pi);
}

TEST(Example, ReductionShapeAndRollOff) {
  const ExampleBundle b = run_example(5, kGamma, 3);
  EXPECT_NEAR(b.report.bound, 0.1932, 1e-4);
  EXPECT_LE(b.report.exact_error, b.report.bound);
  for (std::size_t k = 0; k < b.full.omega.size(); ++k) {
    const double w = b.full.omega[k];
    if (w <= 0.05 * kGamma) EXPECT_LE(std::abs(b.reduced.mag1[k] - b.full.mag1[k]), 0.05) << w;
    if (w >= 2 * kGamma) EXPECT_GE(b.reduced.mag1[k], b.full.mag1[k] - 1e-6) << w;
  }
  EXPECT_TRUE(is_hurwitz(b.report.reduced.A()));
}
