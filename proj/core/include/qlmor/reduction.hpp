#pragma once

// Gramians, quasi-balanced realizations and truncation with a-priori and
// exact H-infinity error.

#include <optional>
#include <string_view>
#include <vector>

#include "qlmor/lqss.hpp"
#include "qlmor/symplectic.hpp"

namespace qlmor {

struct GramianPair {
  RealMatrix P;  // A P + P A^T + B B^T = 0
  RealMatrix Q;  // A^T Q + Q A + C^T C = 0
  std::vector<double> sigmaP;
  std::vector<double> sigmaQ;
  std::vector<double> hankel;  // sqrt(eig(P Q)), descending, length 2n
};

/// Throws NotHurwitz.
GramianPair gramians(const QuadratureModel& G);

enum class CoDiagonalizability { FullyBalanced, QuasiBalanced, Unknown };

std::string_view to_string(CoDiagonalizability c) noexcept;

/// FullyBalanced: ||J P - Q J|| <= tol (||P|| + ||Q||).
/// QuasiBalanced: ||[J P, Q J]|| <= tol ||P|| ||Q||.
CoDiagonalizability classify_codiagonalizability(const GramianPair& gp,
                                                 double tol = 1e-8);

struct QuasiBalancedRealization {
  QuadratureModel model;          // symplectic_similarity(G, T)
  SymplecticTransform T;
  RealMatrix SigmaP;              // T P T^T
  RealMatrix SigmaQ;              // T^-T Q T^-1
  RealMatrix Sigmab;              // (SigmaP SigmaQ)^(1/2)
  std::vector<double> sigma_b;    // per mode, descending
  std::vector<double> distinct;   // sigma_{b,1} > ... > sigma_{b,mu}
  std::vector<Index> multiplicity;  // modes per distinct value
  std::vector<Index> boundaries;    // j_r = multiplicity partial sums

  Index mu() const { return static_cast<Index>(distinct.size()); }
};

/// Symplectic change of variables making both Gramians paired-diagonal, with
/// modes ordered by sqrt(sigma_P sigma_Q) descending. Throws
/// NotCoDiagonalizable when [J P, Q J] != 0 or the recomputed Gramians of the
/// transformed model are not paired-diagonal to 1e-6.
QuasiBalancedRealization quasi_balance(const QuadratureModel& G);

/// Checks a weak co-diagonalization certificate: (i) Tp P Tp^T and
/// (ii) Tq^-T Q Tq^-1 are paired-diagonal with the symplectic eigenvalues of
/// P and Q, (iii) Dp, Dq are diagonal symplectic and Dp^-1 Tp = Dq Tq.
/// Returns Dp^-1 Tp. Throws CertificateInvalid naming the failed condition
/// ("i", "ii", "iii-structure" or "iii-equality").
SymplecticTransform verify_point3_certificate(
    const RealMatrix& P, const RealMatrix& Q, const RealMatrix& Tp,
    const RealMatrix& Tq, const RealMatrix& Dp, const RealMatrix& Dq,
    double tol = 1e-8);

struct BalancingDiagonal {
  RealMatrix Tb;       // diag((sigma_Q / sigma_P)^(1/4) I_2)
  RealMatrix Sigmab;   // common Gramian after Tb
  bool symplectic = false;
};

/// Throws SingularGramian unless both inputs are paired-diagonal with
/// strictly positive entries.
BalancingDiagonal balancing_diagonal(const RealMatrix& SigmaP,
                                     const RealMatrix& SigmaQ);

/// sigma_max(Xi_G(i w) - Xi_{G_r}(i w)) from the closed form
///   lambda_max((S_P2 + Delta^-1 S_P2 Delta^*)(S_Q2 + Delta^-* S_Q2 Delta)),
///   Delta = iwI - A22 - A21 (iwI - A11)^-1 A12,
/// where r modes are kept. Zero for r = n. Throws SingularDelta or BadRange.
double truncation_error_exact(const QuasiBalancedRealization& qb, Index r,
                              double omega);

/// 2 * sum of the dropped distinct sigma_b when r kept modes fall on a group
/// boundary. Throws GroupBoundaryViolation, and NotHurwitz if the kept block
/// is not Hurwitz.
double truncation_error_bound(const QuasiBalancedRealization& qb, Index r);

struct TruncationReport {
  QuadratureModel reduced;
  Index kept = 0;
  Index nu = 0;  // modes with sigma_P sigma_Q above 1e-10 of the maximum
  double bound = 0.0;
  double exact_error = 0.0;
  std::vector<bool> hurwitz_chain;  // kept-block stability per boundary, keep..n-1
  std::vector<Index> chain_sizes;   // block sizes checked, aligned with the above
  std::vector<double> hankel;
  PrReport pr;
};

/// Quasi-balance, drop trailing modes down to `keep`, certify and measure.
/// `keep` must be a group boundary or lie in the zero-error tail. Throws
/// GroupBoundaryViolation, BadRange, NotCoDiagonalizable, NotHurwitz.
TruncationReport reduce(const QuadratureModel& G, Index keep);

/// Smallest group boundary whose bound is within `budget`.
/// Throws BudgetInfeasible for negative or NaN budgets.
TruncationReport reduce_to_budget(const QuadratureModel& G, double budget);

}  // namespace qlmor
