#include <cmath>
#include <string>

#include "qlmor/error.hpp"
#include "qlmor/numerics.hpp"

namespace qlmor {

double lyapunov_residual(const RealMatrix& A, const RealMatrix& X,
                         const RealMatrix& W) {
  return (A * X + X * A.transpose() + W).norm();
}

RealMatrix solve_lyapunov(const RealMatrix& A, const RealMatrix& W) {
  const Index n = A.rows();
  if (A.cols() != n || W.rows() != n || W.cols() != n)
    throw Error(ErrorCode::DimensionMismatch,
                "solve_lyapunov expects square A and W of equal size");
  if (n == 0) return RealMatrix(0, 0);
  if ((W - W.transpose()).norm() > 1e-10 * std::max(1.0, W.norm()))
    throw Error(ErrorCode::NotSymmetric, "Lyapunov right-hand side W");

  Eigen::ComplexSchur<ComplexMatrix> schur(A.cast<Complex>());
  if (schur.info() != Eigen::Success)
    throw Error(ErrorCode::SolveFailure, "Schur iteration did not converge");
  const ComplexMatrix& T = schur.matrixT();
  const ComplexMatrix& U = schur.matrixU();

  const double margin = 1e-12 * A.norm();
  for (Index k = 0; k < n; ++k) {
    if (T(k, k).real() >= -margin)
      throw Error(ErrorCode::NotHurwitz,
                  "eigenvalue with real part " + std::to_string(T(k, k).real()));
  }

  // T Y + Y T^* = -F, one column at a time from the right.
  const ComplexMatrix F = U.adjoint() * W.cast<Complex>() * U;
  ComplexMatrix Y = ComplexMatrix::Zero(n, n);
  for (Index j = n - 1; j >= 0; --j) {
    ComplexVector rhs = -F.col(j);
    for (Index k = j + 1; k < n; ++k) rhs -= std::conj(T(j, k)) * Y.col(k);
    ComplexMatrix M = T;
    M.diagonal().array() += std::conj(T(j, j));
    Y.col(j) = M.triangularView<Eigen::Upper>().solve(rhs);
  }

  RealMatrix X = symmetrize((U * Y * U.adjoint()).real());
  if (!X.allFinite())
    throw Error(ErrorCode::SolveFailure, "non-finite Lyapunov solution");
  const double res = lyapunov_residual(A, X, W);
  const double bound = 1e-9 * (A.norm() * X.norm() + W.norm());
  if (res > bound)
    throw Error(ErrorCode::SolveFailure,
                "Lyapunov residual " + std::to_string(res) + " exceeds " +
                    std::to_string(bound));
  return X;
}

}  // namespace qlmor
