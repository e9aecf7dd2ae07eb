#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qlmor/error.hpp"
#include "qlmor/network.hpp"
#include "qlmor/reduction.hpp"

using namespace qlmor;

namespace {

const double kHankel[] = {0.9028, 0.5826, 0.2632, 0.0812, 0.0154};

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::SolveFailure;
}

// Random passive two-mode system next to a cavity whose outputs are
// discarded: the cavity is driven but unobservable.
QuadratureModel with_hidden_cavity(std::uint64_t seed, bool scramble) {
  const RandomSystem rs = random_cp_system(2, 2, seed);
  QuadratureModel G = select_outputs(build_from_slh(concatenate(rs.slh, build_cavity(1.5))), {0, 1});
  if (scramble) {
    std::mt19937_64 rng(seed);
    G = symplectic_similarity(G, SymplecticTransform(oracle::random_orthogonal_symplectic(3, rng)));
  }
  return G;
}

}  // namespace

TEST(Gramians, SingleCavity) {
  const GramianPair gp = gramians(build_from_slh(build_cavity(12e6)));
  EXPECT_LT((gp.P - RealMatrix::Identity(2, 2)).norm(), 1e-12);
}

TEST(Gramians, PassiveSystemsHaveIdentityP) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RandomSystem rs = random_cp_system(1 + seed % 4, 1 + seed % 3, seed, seed % 2);
    const GramianPair gp = gramians(select_outputs(rs.model, {0}));
    EXPECT_LT((gp.P - RealMatrix::Identity(gp.P.rows(), gp.P.cols())).norm(), 1e-8) << seed;
  }
}

TEST(Gramians, NetworkHankelValues) {
  const GramianPair gp = gramians(build_network({}));
  ASSERT_EQ(gp.hankel.size(), 10u);
  for (int k = 0; k < 10; ++k) EXPECT_NEAR(gp.hankel[k], kHankel[k / 2], 1e-4);
}

TEST(Gramians, SimilarityCovariance) {
  std::mt19937_64 rng(51);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RandomSystem rs = random_pr_system(1 + seed % 3, 2, seed, true);
    const Index n = rs.model.n();
    const SymplecticTransform T(oracle::random_symplectic(n, rng, 1.5));
    const GramianPair g0 = gramians(rs.model);
    const GramianPair g1 = gramians(symplectic_similarity(rs.model, T));
    const RealMatrix& M = T.matrix();
    const RealMatrix Mi = T.inverse();
    EXPECT_LT((g1.P - M * g0.P * M.transpose()).norm(), 1e-7 * std::max(1.0, g1.P.norm()));
    EXPECT_LT((g1.Q - Mi.transpose() * g0.Q * Mi).norm(), 1e-7 * std::max(1.0, g1.Q.norm()));
    EXPECT_TRUE(oracle::close_lists(g1.hankel, g0.hankel, 1e-7));
  }
}

TEST(Classify, Cases) {
  GramianPair id;
  id.P = RealMatrix::Identity(4, 4);
  id.Q = RealMatrix::Identity(4, 4);
  EXPECT_EQ(classify_codiagonalizability(id), CoDiagonalizability::FullyBalanced);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const RandomSystem rs = random_cp_system(3, 2, seed);
    EXPECT_NE(classify_codiagonalizability(gramians(select_outputs(rs.model, {1}))),
              CoDiagonalizability::Unknown);
  }
  int unknown = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed)
    if (classify_codiagonalizability(gramians(random_pr_system(3, 2, seed, true).model)) ==
        CoDiagonalizability::Unknown)
      ++unknown;
  EXPECT_GE(unknown, 95);
}

TEST(QuasiBalance, AlreadyDiagonal) {
  const QuadratureModel G = build_from_slh(concatenate(build_cavity(1.0), build_cavity(4.0)));
  const QuasiBalancedRealization qb = quasi_balance(G);
  EXPECT_LT((qb.SigmaP - RealMatrix::Identity(4, 4)).norm(), 1e-8);
  EXPECT_LT((qb.SigmaQ - RealMatrix::Identity(4, 4)).norm(), 1e-8);
}

TEST(QuasiBalance, Network) {
  const QuasiBalancedRealization qb = quasi_balance(build_network({}));
  EXPECT_LT((qb.SigmaP - RealMatrix::Identity(10, 10)).norm(), 1e-8);
  ASSERT_EQ(qb.mu(), 5);
  for (int k = 0; k < 5; ++k) {
    EXPECT_NEAR(qb.distinct[k], kHankel[k], 1e-4);
    EXPECT_NEAR(std::sqrt(qb.SigmaQ(2 * k, 2 * k)), kHankel[k], 1e-4);
  }
  EXPECT_EQ(qb.boundaries, (std::vector<Index>{1, 2, 3, 4, 5}));
}

TEST(QuasiBalance, PassiveGivesOrthogonalTransform) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RandomSystem rs = random_cp_system(3, 2, seed, true);
    const QuasiBalancedRealization qb = quasi_balance(select_outputs(rs.model, {0}));
    const RealMatrix& T = qb.T.matrix();
    EXPECT_LT((T * T.transpose() - RealMatrix::Identity(6, 6)).norm(), 1e-7) << seed;
    EXPECT_TRUE(is_completely_passive(qb.model).passive);
  }
}

TEST(QuasiBalance, FullyBalancedCoincidence) {
  // Passive systems with every output kept have P = Q = I.
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const RandomSystem rs = random_cp_system(2, 2, seed);
    const GramianPair gp = gramians(rs.model);
    ASSERT_EQ(classify_codiagonalizability(gp), CoDiagonalizability::FullyBalanced);
    const QuasiBalancedRealization qb = quasi_balance(rs.model);
    EXPECT_LT((qb.SigmaP - qb.SigmaQ).norm(), 1e-6);
    const auto s = paired_diagonal_values(qb.SigmaP);
    for (std::size_t k = 0; k < s.size(); ++k) EXPECT_NEAR(s[k], gp.hankel[2 * k], 1e-6);
  }
}

TEST(QuasiBalance, RejectsGenericSystem) {
  // First seed whose Gramians do not commute.
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const RandomSystem rs = random_pr_system(3, 2, seed, true);
    if (classify_codiagonalizability(gramians(rs.model)) != CoDiagonalizability::Unknown) continue;
    EXPECT_EQ(code_of([&] { quasi_balance(rs.model); }), ErrorCode::NotCoDiagonalizable);
    return;
  }
  FAIL() << "every draw was co-diagonalizable";
}

TEST(Point3, Certificates) {
  const RealMatrix I = RealMatrix::Identity(2, 2);
  EXPECT_LT((verify_point3_certificate(I, I, I, I, I, I).matrix() - I).norm(), 1e-15);

  const QuasiBalancedRealization qb = quasi_balance(build_network({}));
  const GramianPair gp = gramians(build_network({}));
  const RealMatrix& T = qb.T.matrix();
  const RealMatrix I10 = RealMatrix::Identity(10, 10);
  EXPECT_LT((verify_point3_certificate(gp.P, gp.Q, T, T, I10, I10, 1e-7).matrix() - T).norm(), 1e-12);

  RealMatrix Dp = I10;
  Dp(0, 0) = 2.0;
  try {
    verify_point3_certificate(gp.P, gp.Q, T, T, Dp, I10, 1e-7);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CertificateInvalid);
    EXPECT_EQ(e.detail().rfind("iii-structure", 0), 0u) << e.detail();
  }
}

TEST(BalancingDiagonal, Cases) {
  const RealMatrix I = RealMatrix::Identity(2, 2);
  const BalancingDiagonal same = balancing_diagonal(3.0 * I, 3.0 * I);
  EXPECT_LT((same.Tb - I).norm(), 1e-15);
  EXPECT_TRUE(same.symplectic);
  const BalancingDiagonal b = balancing_diagonal(I, 4.0 * I);
  EXPECT_NEAR(b.Tb(0, 0), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(b.Sigmab(0, 0), 2.0, 1e-15);
  EXPECT_FALSE(b.symplectic);
  EXPECT_EQ(code_of([&] { balancing_diagonal(I, RealMatrix::Zero(2, 2)); }),
            ErrorCode::SingularGramian);
}

TEST(ExactError, MatchesDirectSubtraction) {
  const QuasiBalancedRealization qb = quasi_balance(build_network({}));
  for (Index r = 1; r < 5; ++r) {
    const QuadratureModel Gr = truncate_subsystem(qb.model, r);
    for (double w : example_grid(12e6, 50)) {
      const double direct = oracle::error_gain(qb.model, Gr, w);
      EXPECT_NEAR(truncation_error_exact(qb, r, w), direct, 1e-7 * direct);
    }
  }
  EXPECT_EQ(truncation_error_exact(qb, 5, 1.0), 0.0);
}

TEST(ExactError, ZeroOnUnobservablePart) {
  const QuasiBalancedRealization qb = quasi_balance(with_hidden_cavity(3, true));
  for (double w : logspace(1e-2, 1e2, 40)) EXPECT_LT(truncation_error_exact(qb, 2, w), 1e-7);
}

TEST(Bound, NetworkValues) {
  const QuasiBalancedRealization qb = quasi_balance(build_network({}));
  EXPECT_NEAR(truncation_error_bound(qb, 3), 0.1932, 1e-4);
  EXPECT_EQ(truncation_error_bound(qb, 5), 0.0);
  EXPECT_NEAR(truncation_error_bound(qb, 4), 2 * 0.0154, 2e-4);
}

TEST(Bound, GroupBoundaryEnforced) {
  // Two identical uncoupled cavities, one output each: a doubly degenerate
  // group.
  const QuadratureModel H = select_outputs(
      interconnect_partial(build_from_slh(build_cavity(1.0)), {}, build_from_slh(build_cavity(1.0)), {}),
      {0, 2});
  const QuasiBalancedRealization qb = quasi_balance(H);
  ASSERT_EQ(qb.mu(), 1);
  EXPECT_EQ(code_of([&] { truncation_error_bound(qb, 1); }), ErrorCode::GroupBoundaryViolation);
  EXPECT_EQ(code_of([&] { reduce(H, 1); }), ErrorCode::GroupBoundaryViolation);
}

TEST(Reduce, Network) {
  const TruncationReport rep = reduce(build_network({}), 3);
  EXPECT_EQ(rep.reduced.n(), 3);
  EXPECT_EQ(rep.reduced.B().cols(), 12);
  EXPECT_EQ(rep.reduced.ny(), 2);
  EXPECT_TRUE(rep.pr.passed());
  EXPECT_TRUE(is_hurwitz(rep.reduced.A()));
  EXPECT_NEAR(rep.bound, 0.1932, 1e-4);
  EXPECT_LE(rep.exact_error, rep.bound + 1e-6);
  EXPECT_EQ(rep.nu, 5);
  EXPECT_EQ(rep.chain_sizes, (std::vector<Index>{3, 4}));
}

TEST(Reduce, BoundAttainedAtLastGroup) {
  // Dropping only the smallest group: the error meets the bound 2 sigma.
  const TruncationReport rep = reduce(build_network({}), 4);
  EXPECT_NEAR(rep.exact_error, rep.bound, 1e-4);
  EXPECT_NEAR(rep.exact_error, 2 * 0.0154, 2e-4);
  const double grid = oracle::grid_hinf(difference_system(quasi_balance(build_network({})).model, rep.reduced),
                                        1e3, 1e11, 2000);
  EXPECT_GE(rep.exact_error, grid - 1e-9);
}

TEST(Reduce, IdentityKeep) {
  const QuadratureModel G = build_network({});
  const TruncationReport rep = reduce(G, 5);
  EXPECT_EQ(rep.exact_error, 0.0);
  EXPECT_EQ(rep.bound, 0.0);
  EXPECT_EQ(code_of([&] { reduce(G, 0); }), ErrorCode::BadRange);
  EXPECT_EQ(code_of([&] { reduce(G, 6); }), ErrorCode::BadRange);
}

TEST(Reduce, Budget) {
  const QuadratureModel G = build_network({});
  EXPECT_EQ(reduce_to_budget(G, 0.2).kept, 3);
  EXPECT_EQ(reduce_to_budget(G, 10.0).kept, 1);
  EXPECT_EQ(reduce_to_budget(G, 0.0).kept, 5);
  EXPECT_EQ(code_of([&] { reduce_to_budget(G, -1.0); }), ErrorCode::BudgetInfeasible);
  EXPECT_EQ(code_of([&] { reduce_to_budget(G, std::nan("")); }), ErrorCode::BudgetInfeasible);
}

TEST(Reduce, ZeroErrorTruncation) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const QuadratureModel G = with_hidden_cavity(seed, seed % 2);
    const TruncationReport rep = reduce(G, 2);
    EXPECT_EQ(rep.nu, 2);
    EXPECT_LE(rep.exact_error, 1e-7) << seed;
    EXPECT_LE(oracle::grid_hinf(difference_system(G, rep.reduced), 1e-3, 1e3, 300), 1e-7);
  }
}

TEST(Reduce, PassiveBoundDominanceAndPassivity) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const RandomSystem rs = random_cp_system(3, 2, seed, true);
    const QuadratureModel G = select_outputs(rs.model, {0});
    const QuasiBalancedRealization qb = quasi_balance(G);
    for (Index b : qb.boundaries) {
      if (b == G.n()) continue;
      const TruncationReport rep = reduce(G, b);
      EXPECT_LE(rep.exact_error, rep.bound + 1e-6) << seed;
      EXPECT_TRUE(is_completely_passive(rep.reduced).passive) << seed;
    }
  }
}
