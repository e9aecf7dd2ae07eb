#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qlmor/error.hpp"
#include "qlmor/symplectic.hpp"

namespace qlmor {

namespace {

constexpr double kTiny = 1e-300;
const Complex kI(0.0, 1.0);

Index half_dimension(const RealMatrix& P) {
  if (P.rows() != P.cols() || P.rows() % 2 != 0)
    throw Error(ErrorCode::OddDimension,
                "expected a square matrix of even size, got " +
                    std::to_string(P.rows()) + "x" + std::to_string(P.cols()));
  return P.rows() / 2;
}

void require_symmetric(const RealMatrix& P) {
  if ((P - P.transpose()).norm() > 1e-10 * std::max(1.0, P.norm()))
    throw Error(ErrorCode::NotSymmetric, "matrix is not symmetric");
}

// <u, v> = -i u^* K v.
Complex form(const ComplexVector& u, const RealMatrix& K,
             const ComplexVector& v) {
  return -kI * u.dot(K.cast<Complex>() * v);
}

void fix_phase(ComplexVector& v) {
  Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  if (std::abs(v(k)) > 0.0) v *= std::conj(v(k)) / std::abs(v(k));
}

}  // namespace

EigenDecomposition symplectic_eigenbasis(const RealMatrix& P) {
  const Index n = half_dimension(P);
  require_symmetric(P);
  const RealMatrix Ps = shuffle_permutation(n);
  const RealMatrix K = block_symplectic_form(n);
  const RealMatrix Pt = symmetrize(Ps * P * Ps.transpose());

  Eigen::SelfAdjointEigenSolver<RealMatrix> es(Pt);
  const RealVector& d = es.eigenvalues();
  const double dmax = std::max(d.maxCoeff(), 0.0);
  if (d.minCoeff() < -1e-10 * std::max(Pt.norm(), kTiny))
    throw Error(ErrorCode::NotDiagonalizable,
                "matrix is not positive semidefinite (eigenvalue " +
                    std::to_string(d.minCoeff()) + ")");

  const double zero_tol = 1e-12 * std::max(dmax, kTiny);
  RealVector root(2 * n);
  std::vector<Index> kernel;
  for (Index k = 0; k < 2 * n; ++k) {
    if (d(k) <= zero_tol) {
      root(k) = 0.0;
      kernel.push_back(k);
    } else {
      root(k) = std::sqrt(d(k));
    }
  }
  const RealMatrix Ph = es.eigenvectors() * root.asDiagonal() *
                        es.eigenvectors().transpose();

  // -i Ph K Ph is Hermitian; an eigenvector u with eigenvalue s > 0 gives the
  // +i s eigenvector K Ph u of K P~.
  const ComplexMatrix H = -kI * (Ph * K * Ph).cast<Complex>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eh(H);
  std::vector<Index> positive;
  for (Index k = 2 * n - 1; k >= 0; --k)
    if (eh.eigenvalues()(k) > 1e-10 * std::max(dmax, kTiny)) positive.push_back(k);

  const Index rank = 2 * n - static_cast<Index>(kernel.size());
  if (2 * static_cast<Index>(positive.size()) != rank)
    throw Error(ErrorCode::NotDiagonalizable,
                "J P has a defective zero eigenvalue (rank " +
                    std::to_string(rank) + ", " +
                    std::to_string(positive.size()) + " nonzero pairs)");

  EigenDecomposition out;
  out.values.resize(2 * n);
  out.vectors.resize(2 * n, 2 * n);
  const Index p = static_cast<Index>(positive.size());
  for (Index j = 0; j < p; ++j) {
    const double s = eh.eigenvalues()(positive[j]);
    ComplexVector v = K.cast<Complex>() * (Ph.cast<Complex>() *
                                           eh.eigenvectors().col(positive[j]));
    v.normalize();
    out.values(j) = Complex(0.0, s);
    out.vectors.col(j) = v;
    out.values(p + j) = Complex(0.0, -s);
    out.vectors.col(p + j) = v.conjugate();
  }
  RealMatrix N(2 * n, static_cast<Index>(kernel.size()));
  for (std::size_t j = 0; j < kernel.size(); ++j)
    N.col(static_cast<Index>(j)) = es.eigenvectors().col(kernel[j]);
  for (Index j = 0; j < N.cols(); ++j) {
    out.values(2 * p + j) = 0.0;
    out.vectors.col(2 * p + j) = N.col(j).cast<Complex>();
  }

  if (N.cols() > 0) {
    Eigen::JacobiSVD<RealMatrix> sv(N.transpose() * K * N);
    if (N.cols() % 2 != 0 || sv.singularValues().minCoeff() < 1e-8)
      throw Error(ErrorCode::NotDiagonalizable,
                  "kernel of P is not a symplectic subspace");
  }
  Eigen::JacobiSVD<ComplexMatrix> cond(out.vectors);
  const RealVector& sv = cond.singularValues();
  if (!(sv(sv.size() - 1) * 1e8 > sv(0)))
    throw Error(ErrorCode::NotDiagonalizable,
                "eigenvector matrix is ill-conditioned");

  const ComplexMatrix KPt = (K * Pt).cast<Complex>();
  const double res =
      (KPt * out.vectors - out.vectors * out.values.asDiagonal()).norm();
  if (res > 1e-8 * std::max(Pt.norm(), kTiny) * std::sqrt(2.0 * n))
    throw Error(ErrorCode::NotDiagonalizable,
                "eigenpair residual " + std::to_string(res));
  return out;
}

NormalizedEigenbasis normalize_eigenbasis(const EigenDecomposition& raw,
                                          Index n) {
  const Index dim = 2 * n;
  if (raw.values.size() != dim || raw.vectors.rows() != dim ||
      raw.vectors.cols() != dim)
    throw Error(ErrorCode::DimensionMismatch,
                "eigendecomposition does not match 2n = " + std::to_string(dim));
  const RealMatrix K = block_symplectic_form(n);
  const double scale = std::max(raw.values.cwiseAbs().maxCoeff(), kTiny);

  std::vector<double> im(dim);
  for (Index k = 0; k < dim; ++k) {
    if (std::abs(raw.values(k).real()) > 1e-8 * scale)
      throw Error(ErrorCode::NotDiagonalizable,
                  "eigenvalue off the imaginary axis");
    im[k] = raw.values(k).imag();
  }
  std::vector<double> sorted = im;
  std::sort(sorted.begin(), sorted.end());
  for (Index k = 0; k < dim; ++k)
    if (std::abs(sorted[k] + sorted[dim - 1 - k]) > 1e-8 * scale)
      throw Error(ErrorCode::NotDiagonalizable,
                  "eigenvalues do not pair as +/- i sigma");

  const double zero_tol = 1e-9 * scale;
  struct Column {
    double sigma;
    ComplexVector v;
  };
  std::vector<Column> plus;
  std::vector<Index> zero;
  for (Index k = 0; k < dim; ++k) {
    if (std::abs(im[k]) <= zero_tol) {
      zero.push_back(k);
      continue;
    }
    ComplexVector v = raw.vectors.col(k).normalized();
    if (form(v, K, v).real() > 0.0) plus.push_back({std::abs(im[k]), v});
  }
  if (2 * plus.size() + zero.size() != static_cast<std::size_t>(dim))
    throw Error(ErrorCode::DegenerateFormBreakdown,
                "form -i v^* K v does not split the spectrum evenly");

  std::stable_sort(plus.begin(), plus.end(),
                   [](const Column& a, const Column& b) { return a.sigma > b.sigma; });
  std::vector<double> sig;
  for (const auto& c : plus) sig.push_back(c.sigma);

  std::vector<ComplexVector> basis;
  std::size_t start = 0;
  for (Index g : group_sizes(sig)) {
    for (std::size_t k = start; k < start + static_cast<std::size_t>(g); ++k) {
      ComplexVector u = plus[k].v;
      for (std::size_t j = start; j < k; ++j) u -= form(basis[j], K, u) * basis[j];
      const double pivot = form(u, K, u).real();
      if (!(pivot >= 1e-10))
        throw Error(ErrorCode::DegenerateFormBreakdown,
                    "Gram-Schmidt pivot " + std::to_string(pivot));
      basis.push_back(u / std::sqrt(pivot));
    }
    start += static_cast<std::size_t>(g);
  }

  if (!zero.empty()) {
    const Index z = static_cast<Index>(zero.size());
    RealMatrix X(dim, 2 * z);
    for (Index j = 0; j < z; ++j) {
      X.col(j) = raw.vectors.col(zero[j]).real();
      X.col(z + j) = raw.vectors.col(zero[j]).imag();
    }
    Eigen::JacobiSVD<RealMatrix> svd(X, Eigen::ComputeThinU);
    const double smax = svd.singularValues()(0);
    Index k = 0;
    while (k < svd.singularValues().size() &&
           svd.singularValues()(k) > 1e-8 * smax)
      ++k;
    if (k != z || z % 2 != 0)
      throw Error(ErrorCode::DegenerateFormBreakdown,
                  "zero eigenspace is not a real even-dimensional subspace");
    const RealMatrix Q = svd.matrixU().leftCols(z);
    const ComplexMatrix G = -kI * (Q.transpose() * K * Q).cast<Complex>();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eg(G);
    for (Index j = z - 1; j >= z / 2; --j) {
      const double mu = eg.eigenvalues()(j);
      if (!(mu >= 1e-10))
        throw Error(ErrorCode::DegenerateFormBreakdown,
                    "zero eigenspace pivot " + std::to_string(mu));
      basis.push_back(Q.cast<Complex>() * eg.eigenvectors().col(j) / std::sqrt(mu));
      sig.push_back(0.0);
    }
  }

  NormalizedEigenbasis out;
  out.V.resize(dim, dim);
  for (Index j = 0; j < n; ++j) {
    ComplexVector v = basis[j];
    fix_phase(v);
    out.V.col(j) = v;
    out.V.col(n + j) = v.conjugate();
  }
  out.sigma = sig;

  ComplexMatrix expect = ComplexMatrix::Identity(dim, dim);
  expect.bottomRightCorner(n, n) *= -1.0;
  const double defect =
      (-kI * out.V.adjoint() * K.cast<Complex>() * out.V - expect).norm();
  if (defect > 1e-7 * std::max(1.0, static_cast<double>(dim)))
    throw Error(ErrorCode::DegenerateFormBreakdown,
                "normalization defect " + std::to_string(defect));
  return out;
}

std::vector<double> symplectic_eigenvalues(const RealMatrix& P) {
  const Index n = half_dimension(P);
  const EigenDecomposition raw = symplectic_eigenbasis(P);
  std::vector<double> im(raw.values.size());
  for (Index k = 0; k < raw.values.size(); ++k) im[k] = raw.values(k).imag();
  std::sort(im.begin(), im.end(), std::greater<>());
  im.resize(n);
  for (double& s : im) s = std::max(s, 0.0);
  return im;
}

WilliamsonResult williamson(const RealMatrix& P) {
  const Index n = half_dimension(P);
  const NormalizedEigenbasis nb = normalize_eigenbasis(symplectic_eigenbasis(P), n);
  const RealMatrix Ps = shuffle_permutation(n);

  ComplexMatrix U = ComplexMatrix::Zero(2 * n, 2 * n);
  const double h = 1.0 / std::sqrt(2.0);
  for (Index k = 0; k < n; ++k) {
    U(2 * k, 2 * k) = h;
    U(2 * k, 2 * k + 1) = -kI * h;
    U(2 * k + 1, 2 * k) = h;
    U(2 * k + 1, 2 * k + 1) = kI * h;
  }
  const ComplexMatrix T0 =
      Ps.transpose().cast<Complex>() * nb.V * Ps.cast<Complex>() * U;
  const double imag = T0.imag().norm();
  if (imag > 1e-8 * std::max(1.0, T0.norm()))
    throw Error(ErrorCode::SolveFailure,
                "Williamson transform has imaginary residue " + std::to_string(imag));
  RealMatrix T = T0.real().transpose();

  RealMatrix Sigma = paired_diagonal(nb.sigma);
  const double defect = (T * P * T.transpose() - Sigma).norm();
  if (defect > 1e-7 * std::max(P.norm(), kTiny))
    throw Error(ErrorCode::SolveFailure,
                "T P T^T differs from its normal form by " + std::to_string(defect));
  return WilliamsonResult{SymplecticTransform(std::move(T)), nb.sigma,
                          std::move(Sigma)};
}

CoDiagonalization codiagonalize_commuting(const RealMatrix& P,
                                          const RealMatrix& Q, double tol) {
  const Index n = half_dimension(P);
  if (Q.rows() != P.rows() || Q.cols() != P.cols())
    throw Error(ErrorCode::DimensionMismatch, "P and Q differ in size");
  const RealMatrix J = symplectic_form(n);
  const double comm = (J * P * Q * J - Q * J * J * P).norm();
  if (comm > tol * P.norm() * Q.norm())
    throw Error(ErrorCode::NotCommuting,
                "||[J P, Q J]||_F = " + std::to_string(comm));

  const WilliamsonResult wp = williamson(P);
  const RealMatrix T1inv = wp.transform.inverse();
  const RealMatrix Q1 = symmetrize(T1inv.transpose() * Q * T1inv);

  // On a block where T1 P T1^T is a multiple of the identity, any orthogonal
  // symplectic change keeps it so; the Williamson transform of Q restricted
  // there is orthogonal because that block commutes with J.
  RealMatrix T2 = RealMatrix::Zero(2 * n, 2 * n);
  Index offset = 0;
  for (Index g : group_sizes(wp.sigma)) {
    const RealMatrix Qg = Q1.block(2 * offset, 2 * offset, 2 * g, 2 * g);
    const WilliamsonResult wq = williamson(Qg);
    const RealMatrix Jg = symplectic_form(g);
    T2.block(2 * offset, 2 * offset, 2 * g, 2 * g) =
        -Jg * wq.transform.matrix() * Jg;
    offset += g;
  }

  SymplecticTransform T(T2 * wp.transform.matrix());
  const RealMatrix Tinv = T.inverse();
  const RealMatrix SP = symmetrize(T.matrix() * P * T.matrix().transpose());
  const RealMatrix SQ = symmetrize(Tinv.transpose() * Q * Tinv);
  const double dP = paired_diagonal_defect(SP);
  const double dQ = paired_diagonal_defect(SQ);
  if (dP > 1e-6 * std::max(P.norm(), kTiny) || dQ > 1e-6 * std::max(Q.norm(), kTiny))
    throw Error(ErrorCode::NotCoDiagonalizable,
                "residual off-diagonal mass " + std::to_string(std::max(dP, dQ)));
  return CoDiagonalization{std::move(T), paired_diagonal(paired_diagonal_values(SP)),
                           paired_diagonal(paired_diagonal_values(SQ))};
}

}  // namespace qlmor
