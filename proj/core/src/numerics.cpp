#include "qlmor/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qlmor/error.hpp"

namespace qlmor {

double default_hurwitz_tol(const RealMatrix& A) {
  return 1e-10 * std::max(1.0, A.norm());
}

double spectral_abscissa(const RealMatrix& A) {
  if (A.rows() == 0) return -std::numeric_limits<double>::infinity();
  Eigen::EigenSolver<RealMatrix> es(A, false);
  if (es.info() != Eigen::Success)
    throw Error(ErrorCode::SolveFailure, "eigenvalue iteration did not converge");
  return es.eigenvalues().real().maxCoeff();
}

bool is_hurwitz(const RealMatrix& A, double tol) {
  return spectral_abscissa(A) < -tol;
}

bool is_hurwitz(const RealMatrix& A) {
  return is_hurwitz(A, default_hurwitz_tol(A));
}

double max_singular_value(const RealMatrix& M) {
  if (M.size() == 0) return 0.0;
  Eigen::JacobiSVD<RealMatrix> svd(M);
  return svd.singularValues()(0);
}

double max_singular_value(const ComplexMatrix& M) {
  if (M.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(M);
  return svd.singularValues()(0);
}

ComplexMatrix evaluate_transfer(const RealMatrix& A, const RealMatrix& B,
                                const RealMatrix& C, const RealMatrix& D,
                                Complex s) {
  ComplexMatrix out = D.cast<Complex>();
  const Index n = A.rows();
  if (n == 0) return out;
  ComplexMatrix resolvent =
      s * ComplexMatrix::Identity(n, n) - A.cast<Complex>();
  Eigen::PartialPivLU<ComplexMatrix> lu(resolvent);
  if (!(lu.rcond() > 1e-14))
    throw Error(ErrorCode::SingularResolvent,
                "sI - A is singular at s = (" + std::to_string(s.real()) + ", " +
                    std::to_string(s.imag()) + ")");
  out += C.cast<Complex>() * lu.solve(B.cast<Complex>());
  return out;
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> pts;
  if (n <= 0) return pts;
  if (n == 1) return {lo};
  const double a = std::log10(lo), b = std::log10(hi);
  pts.reserve(n);
  for (int k = 0; k < n; ++k)
    pts.push_back(std::pow(10.0, a + (b - a) * k / (n - 1)));
  pts.front() = lo;
  pts.back() = hi;
  return pts;
}

RealMatrix block_diag(const RealMatrix& a, const RealMatrix& b) {
  RealMatrix out = RealMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

RealMatrix symmetrize(const RealMatrix& M) {
  return 0.5 * (M + M.transpose());
}

}  // namespace qlmor
