#include "qlmor/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qlmor/error.hpp"

namespace qlmor {

RealMatrix symplectic_form(Index n) {
  RealMatrix J = RealMatrix::Zero(2 * n, 2 * n);
  for (Index k = 0; k < n; ++k) {
    J(2 * k, 2 * k + 1) = 1.0;
    J(2 * k + 1, 2 * k) = -1.0;
  }
  return J;
}

RealMatrix block_symplectic_form(Index n) {
  RealMatrix K = RealMatrix::Zero(2 * n, 2 * n);
  K.topRightCorner(n, n).setIdentity();
  K.bottomLeftCorner(n, n) = -RealMatrix::Identity(n, n);
  return K;
}

RealMatrix shuffle_permutation(Index n) {
  RealMatrix Ps = RealMatrix::Zero(2 * n, 2 * n);
  for (Index k = 0; k < n; ++k) {
    Ps(k, 2 * k) = 1.0;
    Ps(n + k, 2 * k + 1) = 1.0;
  }
  return Ps;
}

SymplecticForm::SymplecticForm(Index modes)
    : n(modes),
      Jn(symplectic_form(modes)),
      Kn(block_symplectic_form(modes)),
      Ps(shuffle_permutation(modes)) {}

double symplectic_residual(const RealMatrix& T) {
  if (T.rows() != T.cols() || T.rows() % 2 != 0)
    throw Error(ErrorCode::OddDimension,
                "expected a square matrix of even size, got " +
                    std::to_string(T.rows()) + "x" + std::to_string(T.cols()));
  const RealMatrix J = symplectic_form(T.rows() / 2);
  return (T * J * T.transpose() - J).norm();
}

bool is_symplectic(const RealMatrix& T, double tol) {
  return symplectic_residual(T) <= tol;
}

SymplecticTransform::SymplecticTransform(RealMatrix T) : T_(std::move(T)) {
  residual_ = symplectic_residual(T_);
  const double bound = 1e-8 * std::max(1.0, T_.squaredNorm());
  if (!(residual_ <= bound))
    throw Error(ErrorCode::NotSymplectic,
                "||T J T^T - J||_F = " + std::to_string(residual_));
}

SymplecticTransform SymplecticTransform::identity(Index n) {
  return SymplecticTransform(RealMatrix::Identity(2 * n, 2 * n));
}

RealMatrix SymplecticTransform::inverse() const {
  const RealMatrix J = symplectic_form(modes());
  return -J * T_.transpose() * J;
}

SymplecticTransform SymplecticTransform::compose(
    const SymplecticTransform& after) const {
  return SymplecticTransform(after.T_ * T_);
}

RealMatrix paired_diagonal(const std::vector<double>& s) {
  const Index n = static_cast<Index>(s.size());
  RealMatrix out = RealMatrix::Zero(2 * n, 2 * n);
  for (Index k = 0; k < n; ++k) out(2 * k, 2 * k) = out(2 * k + 1, 2 * k + 1) = s[k];
  return out;
}

std::vector<double> paired_diagonal_values(const RealMatrix& M) {
  std::vector<double> out;
  for (Index k = 0; 2 * k + 1 < M.rows(); ++k)
    out.push_back(0.5 * (M(2 * k, 2 * k) + M(2 * k + 1, 2 * k + 1)));
  return out;
}

double paired_diagonal_defect(const RealMatrix& M) {
  return (M - paired_diagonal(paired_diagonal_values(M))).norm();
}

std::vector<Index> group_sizes(const std::vector<double>& descending,
                               double rel_tol) {
  std::vector<Index> sizes;
  if (descending.empty()) return sizes;
  const double scale = std::max(
      std::abs(*std::max_element(descending.begin(), descending.end())), 1e-300);
  std::size_t start = 0;
  for (std::size_t k = 1; k <= descending.size(); ++k) {
    if (k == descending.size() ||
        std::abs(descending[start] - descending[k]) > rel_tol * scale) {
      sizes.push_back(static_cast<Index>(k - start));
      start = k;
    }
  }
  return sizes;
}

}  // namespace qlmor
