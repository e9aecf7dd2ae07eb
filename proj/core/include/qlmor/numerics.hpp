#pragma once

// Dense linear-algebra substrate shared by the rest of the library: Lyapunov
// solves, stability tests, singular values and H-infinity norms. All routines
// are pure functions of their arguments.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qlmor {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Eigenpairs with eigenvectors stored column-wise, aligned with `values`.
struct EigenDecomposition {
  ComplexVector values;
  ComplexMatrix vectors;
};

/// 1e-10 * max(1, ||A||_F): the default margin used by is_hurwitz.
double default_hurwitz_tol(const RealMatrix& A);

/// Largest real part over the spectrum of A.
double spectral_abscissa(const RealMatrix& A);

/// True iff every eigenvalue of A has real part < -tol.
bool is_hurwitz(const RealMatrix& A, double tol);
bool is_hurwitz(const RealMatrix& A);

/// Solves A X + X A^T + W = 0 for Hurwitz A and symmetric W.
///
/// Bartels-Stewart on the complex Schur form of A. The result is symmetrized
/// and its residual is checked against
/// 1e-9 * (||A||_F ||X||_F + ||W||_F); a larger residual raises SolveFailure.
/// Throws NotHurwitz if some eigenvalue has real part >= -1e-12 ||A||_F.
RealMatrix solve_lyapunov(const RealMatrix& A, const RealMatrix& W);

/// Frobenius residual ||A X + X A^T + W||_F.
double lyapunov_residual(const RealMatrix& A, const RealMatrix& X,
                         const RealMatrix& W);

double max_singular_value(const RealMatrix& M);
double max_singular_value(const ComplexMatrix& M);

/// C (sI - A)^{-1} B + D. Throws SingularResolvent when sI - A is singular
/// to working precision.
ComplexMatrix evaluate_transfer(const RealMatrix& A, const RealMatrix& B,
                                const RealMatrix& C, const RealMatrix& D,
                                Complex s);

struct HinfResult {
  double value = 0.0;
  double peak_frequency = 0.0;  // rad/s; +inf when the supremum is at infinity
  bool grid_fallback = false;   // true if the Hamiltonian test was bypassed
  int iterations = 0;
};

/// sup_w sigma_max(C (iwI - A)^{-1} B + D) to relative accuracy `rel_tol`.
///
/// A log-spaced sweep brackets the peak; bisection on gamma then uses the
/// imaginary-axis eigenvalues of the associated Hamiltonian matrix. Every
/// accepted lower bound is a realized value of sigma_max, so the answer never
/// overestimates. When gamma approaches sigma_max(D) or the peak is below
/// working precision the Hamiltonian is ill-conditioned and a golden-section
/// refinement of the grid is used instead (flagged in the result).
HinfResult hinf_norm(const RealMatrix& A, const RealMatrix& B,
                     const RealMatrix& C, const RealMatrix& D,
                     double rel_tol = 1e-6);

/// n log-spaced points covering [lo, hi], inclusive.
std::vector<double> logspace(double lo, double hi, int n);

/// Block-diagonal concatenation.
RealMatrix block_diag(const RealMatrix& a, const RealMatrix& b);

/// Symmetric part (M + M^T) / 2.
RealMatrix symmetrize(const RealMatrix& M);

}  // namespace qlmor
