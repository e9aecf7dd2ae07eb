#include "qlmor/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qlmor/error.hpp"

namespace qlmor {

namespace {

constexpr double kTiny = 1e-300;
constexpr double kGroupTol = 1e-6;
constexpr double kZeroProduct = 1e-10;

std::vector<double> symplectic_eigenvalues_or_empty(const RealMatrix& X) {
  try {
    return symplectic_eigenvalues(X);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotDiagonalizable ||
        e.code() == ErrorCode::DegenerateFormBreakdown)
      return {};
    throw;
  }
}

RealMatrix psd_sqrt(const RealMatrix& X) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(symmetrize(X));
  const RealVector root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
}

Index count_nonzero_products(const std::vector<double>& sigma_b) {
  if (sigma_b.empty()) return 0;
  const double top = *std::max_element(sigma_b.begin(), sigma_b.end());
  Index nu = 0;
  for (double s : sigma_b)
    if (s * s > kZeroProduct * top * top) ++nu;
  return nu;
}

// 2 * sum of sigma_b over every group that loses at least one mode.
double dropped_bound(const QuasiBalancedRealization& qb, Index keep) {
  double bound = 0.0;
  Index start = 0;
  for (std::size_t g = 0; g < qb.distinct.size(); ++g) {
    const Index end = start + qb.multiplicity[g];
    if (end > keep) bound += 2.0 * qb.distinct[g];
    start = end;
  }
  return bound;
}

bool is_boundary(const QuasiBalancedRealization& qb, Index keep) {
  return std::find(qb.boundaries.begin(), qb.boundaries.end(), keep) !=
         qb.boundaries.end();
}

TruncationReport reduce_balanced(const QuadratureModel& G,
                                 const QuasiBalancedRealization& qb,
                                 Index keep) {
  const Index n = G.n();
  if (keep < 1 || keep > n)
    throw Error(ErrorCode::BadRange, "keep = " + std::to_string(keep) +
                                         " outside [1, " + std::to_string(n) + "]");
  const GramianPair gp = gramians(G);
  TruncationReport rep{G, keep, 0, 0.0, 0.0, {}, {}, {}, {}};
  rep.nu = count_nonzero_products(qb.sigma_b);
  rep.hankel = gp.hankel;
  if (keep == n) {
    rep.pr = check_physical_realizability(G);
    return rep;
  }

  if (!is_boundary(qb, keep) && keep < rep.nu)
    throw Error(ErrorCode::GroupBoundaryViolation,
                "keeping " + std::to_string(keep) +
                    " modes splits a degenerate sigma_b group");

  std::vector<Index> sizes;
  if (!is_boundary(qb, keep)) sizes.push_back(keep);
  for (Index b : qb.boundaries)
    if (b >= keep && b < n) sizes.push_back(b);
  std::sort(sizes.begin(), sizes.end());
  for (Index b : sizes) {
    const bool ok = is_hurwitz(qb.model.A().topLeftCorner(2 * b, 2 * b));
    if (!ok)
      throw Error(ErrorCode::NotHurwitz,
                  "leading " + std::to_string(b) +
                      "-mode block of the quasi-balanced realization is not Hurwitz");
    rep.hurwitz_chain.push_back(ok);
    rep.chain_sizes.push_back(b);
  }

  rep.reduced = truncate_subsystem(qb.model, keep);
  rep.pr = check_physical_realizability(rep.reduced);
  if (!rep.pr.passed())
    throw Error(ErrorCode::SolveFailure,
                "truncated model fails physical realizability (residual " +
                    std::to_string(rep.pr.worst()) + ")");
  rep.bound = dropped_bound(qb, keep);
  rep.exact_error = hinf_norm(difference_system(qb.model, rep.reduced)).value;
  return rep;
}

}  // namespace

GramianPair gramians(const QuadratureModel& G) {
  GramianPair gp;
  gp.P = solve_lyapunov(G.A(), G.B() * G.B().transpose());
  gp.Q = solve_lyapunov(G.A().transpose(), G.C().transpose() * G.C());
  gp.sigmaP = symplectic_eigenvalues_or_empty(gp.P);
  gp.sigmaQ = symplectic_eigenvalues_or_empty(gp.Q);

  const RealMatrix Ph = psd_sqrt(gp.P);
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(symmetrize(Ph * gp.Q * Ph),
                                               Eigen::EigenvaluesOnly);
  for (Index k = es.eigenvalues().size() - 1; k >= 0; --k)
    gp.hankel.push_back(std::sqrt(std::max(es.eigenvalues()(k), 0.0)));
  return gp;
}

std::string_view to_string(CoDiagonalizability c) noexcept {
  switch (c) {
    case CoDiagonalizability::FullyBalanced:
      return "FullyBalanced";
    case CoDiagonalizability::QuasiBalanced:
      return "QuasiBalanced";
    case CoDiagonalizability::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

CoDiagonalizability classify_codiagonalizability(const GramianPair& gp,
                                                 double tol) {
  const RealMatrix J = symplectic_form(gp.P.rows() / 2);
  const double p = gp.P.norm(), q = gp.Q.norm();
  if ((J * gp.P - gp.Q * J).norm() <= tol * std::max(p + q, kTiny))
    return CoDiagonalizability::FullyBalanced;
  const double comm = (J * gp.P * gp.Q * J - gp.Q * J * J * gp.P).norm();
  if (comm <= tol * std::max(p * q, kTiny))
    return CoDiagonalizability::QuasiBalanced;
  return CoDiagonalizability::Unknown;
}

QuasiBalancedRealization quasi_balance(const QuadratureModel& G) {
  const GramianPair gp = gramians(G);
  if (classify_codiagonalizability(gp) == CoDiagonalizability::Unknown)
    throw Error(ErrorCode::NotCoDiagonalizable,
                "[J P, Q J] does not vanish; no quasi-balanced realization");
  CoDiagonalization cd = [&] {
    try {
      return codiagonalize_commuting(gp.P, gp.Q);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NotCommuting)
        throw Error(ErrorCode::NotCoDiagonalizable, e.detail());
      throw;
    }
  }();

  const Index n = G.n();
  const std::vector<double> sp = paired_diagonal_values(cd.SigmaP);
  const std::vector<double> sq = paired_diagonal_values(cd.SigmaQ);
  std::vector<double> sb(n);
  for (Index k = 0; k < n; ++k) sb[k] = std::sqrt(std::max(sp[k] * sq[k], 0.0));
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return sb[a] > sb[b]; });

  const RealMatrix Pi = mode_permutation_matrix(order);
  SymplecticTransform T(Pi * cd.transform.matrix());
  QuadratureModel model = symplectic_similarity(G, T);

  std::vector<double> spo(n), sqo(n), sbo(n);
  for (Index k = 0; k < n; ++k) {
    spo[k] = sp[order[k]];
    sqo[k] = sq[order[k]];
    sbo[k] = sb[order[k]];
  }
  RealMatrix SigmaP = paired_diagonal(spo);
  RealMatrix SigmaQ = paired_diagonal(sqo);

  const GramianPair check = gramians(model);
  const double dP = (check.P - SigmaP).norm();
  const double dQ = (check.Q - SigmaQ).norm();
  if (dP > 1e-6 * std::max(SigmaP.norm(), kTiny) ||
      dQ > 1e-6 * std::max(SigmaQ.norm(), kTiny))
    throw Error(ErrorCode::NotCoDiagonalizable,
                "transformed Gramians are not paired-diagonal (defect " +
                    std::to_string(std::max(dP, dQ)) + ")");

  QuasiBalancedRealization qb{std::move(model), std::move(T), std::move(SigmaP),
                              std::move(SigmaQ), paired_diagonal(sbo), sbo, {}, {}, {}};
  Index offset = 0;
  for (Index g : group_sizes(sbo, kGroupTol)) {
    qb.distinct.push_back(sbo[offset]);
    qb.multiplicity.push_back(g);
    offset += g;
    qb.boundaries.push_back(offset);
  }
  return qb;
}

SymplecticTransform verify_point3_certificate(
    const RealMatrix& P, const RealMatrix& Q, const RealMatrix& Tp,
    const RealMatrix& Tq, const RealMatrix& Dp, const RealMatrix& Dq,
    double tol) {
  const Index dim = P.rows();
  for (const RealMatrix* M : {&Q, &Tp, &Tq, &Dp, &Dq})
    if (M->rows() != dim || M->cols() != dim)
      throw Error(ErrorCode::DimensionMismatch, "certificate matrices differ in size");

  auto diagonal_with = [&](const RealMatrix& X, const RealMatrix& Y,
                           const RealMatrix& Tx, const char* which) {
    const double scale = std::max(X.norm(), kTiny);
    if (symplectic_residual(Tx) > tol * std::max(1.0, Tx.squaredNorm()))
      throw Error(ErrorCode::CertificateInvalid,
                  std::string(which) + ": transform is not symplectic");
    if (paired_diagonal_defect(Y) > tol * scale * std::max(1.0, Tx.squaredNorm()))
      throw Error(ErrorCode::CertificateInvalid,
                  std::string(which) + ": transformed Gramian is not paired-diagonal");
    std::vector<double> got = paired_diagonal_values(Y);
    std::vector<double> want = symplectic_eigenvalues(X);
    std::sort(got.begin(), got.end(), std::greater<>());
    for (std::size_t k = 0; k < got.size(); ++k)
      if (std::abs(got[k] - want[k]) > 1e-6 * std::max(want.front(), kTiny))
        throw Error(ErrorCode::CertificateInvalid,
                    std::string(which) +
                        ": diagonal differs from the symplectic eigenvalues");
  };
  diagonal_with(P, Tp * P * Tp.transpose(), Tp, "i");
  const RealMatrix Tqinv = -symplectic_form(dim / 2) * Tq.transpose() *
                           symplectic_form(dim / 2);
  diagonal_with(Q, Tqinv.transpose() * Q * Tqinv, Tq, "ii");

  for (const RealMatrix* Dx : {&Dp, &Dq}) {
    RealMatrix off = *Dx;
    off.diagonal().setZero();
    bool ok = off.norm() <= tol;
    for (Index k = 0; ok && 2 * k + 1 < dim; ++k)
      ok = std::abs((*Dx)(2 * k, 2 * k) * (*Dx)(2 * k + 1, 2 * k + 1) - 1.0) <= tol;
    if (!ok)
      throw Error(ErrorCode::CertificateInvalid,
                  "iii-structure: D is not diagonal symplectic");
  }
  const RealMatrix lhs = Dp.diagonal().cwiseInverse().asDiagonal() * Tp;
  if ((lhs - Dq * Tq).norm() > tol * std::max(1.0, lhs.norm()))
    throw Error(ErrorCode::CertificateInvalid, "iii-equality: Dp^-1 Tp != Dq Tq");
  return SymplecticTransform(lhs);
}

BalancingDiagonal balancing_diagonal(const RealMatrix& SigmaP,
                                     const RealMatrix& SigmaQ) {
  if (SigmaP.rows() != SigmaQ.rows() || SigmaP.rows() % 2 != 0)
    throw Error(ErrorCode::DimensionMismatch, "Gramians differ in size");
  const double scale = std::max({SigmaP.norm(), SigmaQ.norm(), kTiny});
  if (paired_diagonal_defect(SigmaP) > 1e-8 * scale ||
      paired_diagonal_defect(SigmaQ) > 1e-8 * scale)
    throw Error(ErrorCode::SingularGramian, "Gramians are not paired-diagonal");
  const std::vector<double> sp = paired_diagonal_values(SigmaP);
  const std::vector<double> sq = paired_diagonal_values(SigmaQ);
  std::vector<double> t(sp.size()), b(sp.size());
  for (std::size_t k = 0; k < sp.size(); ++k) {
    if (!(sp[k] > 0.0 && sq[k] > 0.0))
      throw Error(ErrorCode::SingularGramian,
                  "mode " + std::to_string(k) + " has a zero Gramian entry");
    t[k] = std::pow(sq[k] / sp[k], 0.25);
    b[k] = std::sqrt(sp[k] * sq[k]);
  }
  BalancingDiagonal out{paired_diagonal(t), paired_diagonal(b), false};
  out.symplectic = is_symplectic(out.Tb, 1e-10 * std::max(1.0, out.Tb.squaredNorm()));
  return out;
}

double truncation_error_exact(const QuasiBalancedRealization& qb, Index r,
                              double omega) {
  const Index n = qb.model.n();
  if (r < 0 || r > n)
    throw Error(ErrorCode::BadRange, "r = " + std::to_string(r));
  if (r == n) return 0.0;
  const Index k = 2 * r, d = 2 * (n - r);
  const ComplexMatrix A = qb.model.A().cast<Complex>();
  const Complex s(0.0, omega);

  ComplexMatrix Delta = s * ComplexMatrix::Identity(d, d) - A.bottomRightCorner(d, d);
  if (k > 0) {
    Eigen::PartialPivLU<ComplexMatrix> lu11(
        s * ComplexMatrix::Identity(k, k) - A.topLeftCorner(k, k));
    if (!(lu11.rcond() > 1e-14))
      throw Error(ErrorCode::SingularDelta, "i w I - A11 is singular");
    Delta -= A.bottomLeftCorner(d, k) * lu11.solve(A.topRightCorner(k, d));
  }
  Eigen::PartialPivLU<ComplexMatrix> lu(Delta);
  if (!(lu.rcond() > 1e-14))
    throw Error(ErrorCode::SingularDelta,
                "Delta(i w) is singular at w = " + std::to_string(omega));
  const ComplexMatrix Di = lu.inverse();
  const ComplexMatrix SP = qb.SigmaP.bottomRightCorner(d, d).cast<Complex>();
  const ComplexMatrix SQ = qb.SigmaQ.bottomRightCorner(d, d).cast<Complex>();
  const ComplexMatrix M1 = SP + Di * SP * Delta.adjoint();
  const ComplexMatrix M2 = SQ + Di.adjoint() * SQ * Delta;
  Eigen::ComplexEigenSolver<ComplexMatrix> es(M1 * M2, false);
  const double lmax = es.eigenvalues().real().maxCoeff();
  return std::sqrt(std::max(lmax, 0.0));
}

double truncation_error_bound(const QuasiBalancedRealization& qb, Index r) {
  const Index n = qb.model.n();
  if (r == n) return 0.0;
  if (r < 1 || r > n || !is_boundary(qb, r))
    throw Error(ErrorCode::GroupBoundaryViolation,
                "r = " + std::to_string(r) + " is not a sigma_b group boundary");
  if (!is_hurwitz(qb.model.A().topLeftCorner(2 * r, 2 * r)))
    throw Error(ErrorCode::NotHurwitz,
                "leading " + std::to_string(r) + "-mode block is not Hurwitz");
  return dropped_bound(qb, r);
}

TruncationReport reduce(const QuadratureModel& G, Index keep) {
  if (keep < 1 || keep > G.n())
    throw Error(ErrorCode::BadRange, "keep = " + std::to_string(keep) +
                                         " outside [1, " + std::to_string(G.n()) + "]");
  return reduce_balanced(G, quasi_balance(G), keep);
}

TruncationReport reduce_to_budget(const QuadratureModel& G, double budget) {
  if (!(budget >= 0.0))
    throw Error(ErrorCode::BudgetInfeasible,
                "error budget must be a non-negative number");
  const QuasiBalancedRealization qb = quasi_balance(G);
  for (Index b : qb.boundaries)
    if (dropped_bound(qb, b) <= budget) return reduce_balanced(G, qb, b);
  return reduce_balanced(G, qb, G.n());
}

}  // namespace qlmor
