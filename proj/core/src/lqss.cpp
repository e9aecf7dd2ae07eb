#include "qlmor/lqss.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "qlmor/error.hpp"

namespace qlmor {

namespace {

const Complex kI(0.0, 1.0);

std::string shape(const RealMatrix& M) {
  return std::to_string(M.rows()) + "x" + std::to_string(M.cols());
}

double unitarity_defect(const ComplexMatrix& S) {
  return (S * S.adjoint() - ComplexMatrix::Identity(S.rows(), S.rows())).norm();
}

}  // namespace

void SlhParams::validate() const {
  if (S.rows() != S.cols())
    throw Error(ErrorCode::DimensionMismatch, "S must be square");
  if (R.rows() != R.cols() || R.rows() % 2 != 0)
    throw Error(ErrorCode::DimensionMismatch, "R must be 2n x 2n");
  if (K.rows() != S.rows() || K.cols() != R.rows())
    throw Error(ErrorCode::DimensionMismatch,
                "K must be m x 2n, got " + std::to_string(K.rows()) + "x" +
                    std::to_string(K.cols()));
  if ((R - R.transpose()).norm() > 1e-10 * std::max(1.0, R.norm()))
    throw Error(ErrorCode::NotSymmetric, "Hamiltonian matrix R");
  const double u = unitarity_defect(S);
  if (u > 1e-10)
    throw Error(ErrorCode::NonUnitaryScattering,
                "||S S^* - I|| = " + std::to_string(u));
}

SlhParams SlhParams::identity(Index m) {
  return SlhParams{ComplexMatrix::Identity(m, m), ComplexMatrix::Zero(m, 0),
                   RealMatrix::Zero(0, 0)};
}

QuadratureModel::QuadratureModel(RealMatrix A, RealMatrix B, RealMatrix C,
                                 RealMatrix D)
    : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), D_(std::move(D)) {
  const Index two_n = A_.rows();
  if (A_.cols() != two_n || two_n % 2 != 0)
    throw Error(ErrorCode::DimensionMismatch, "A must be 2n x 2n, got " + shape(A_));
  if (B_.rows() != two_n || B_.cols() % 2 != 0)
    throw Error(ErrorCode::DimensionMismatch, "B must be 2n x 2m, got " + shape(B_));
  if (C_.cols() != two_n || C_.rows() % 2 != 0)
    throw Error(ErrorCode::DimensionMismatch,
                "C must be n_y x 2n with n_y even, got " + shape(C_));
  if (D_.rows() != C_.rows() || D_.cols() != B_.cols())
    throw Error(ErrorCode::DimensionMismatch, "D must be n_y x 2m, got " + shape(D_));
  if (C_.rows() > B_.cols())
    throw Error(ErrorCode::DimensionMismatch, "n_y exceeds 2m");
  if (!A_.allFinite() || !B_.allFinite() || !C_.allFinite() || !D_.allFinite())
    throw Error(ErrorCode::DimensionMismatch, "non-finite entries");
  pr_certified_ = check_physical_realizability(*this).passed();
}

double PrReport::worst() const {
  return std::max({realizability, coupling, scattering});
}

PrReport check_physical_realizability(const QuadratureModel& G, double tol) {
  const RealMatrix Jn = symplectic_form(G.n());
  const RealMatrix Jm = symplectic_form(G.m());
  const RealMatrix Jy = symplectic_form(G.ny() / 2);
  const double a = G.A().norm(), b = G.B().norm(), c = G.C().norm(),
               d = G.D().norm();
  PrReport r;
  r.tol = tol;
  r.realizability =
      (G.A() * Jn + Jn * G.A().transpose() + G.B() * Jm * G.B().transpose()).norm() /
      std::max(1.0, 2.0 * a + b * b);
  r.coupling = (Jn * G.C().transpose() + G.B() * Jm * G.D().transpose()).norm() /
               std::max(1.0, c + b * d);
  r.scattering = (G.D() * Jm * G.D().transpose() - Jy).norm() / std::max(1.0, d * d);
  return r;
}

ComplexMatrix annihilation_map(Index n) {
  ComplexMatrix S = ComplexMatrix::Zero(n, 2 * n);
  for (Index j = 0; j < n; ++j) {
    S(j, 2 * j) = 0.5;
    S(j, 2 * j + 1) = 0.5 * kI;
  }
  return S;
}

ComplexMatrix annihilation_basis_change(const RealMatrix& T) {
  const Index n = T.rows() / 2;
  const ComplexMatrix S = annihilation_map(n);
  ComplexMatrix left(2 * n, 2 * n), right(2 * n, 2 * n);
  left << S, S.conjugate();
  right << S.adjoint(), S.transpose();
  return 2.0 * left * T.cast<Complex>() * right;
}

QuadratureModel build_from_slh(const SlhParams& p) {
  p.validate();
  const Index n = p.modes(), m = p.channels();
  const RealMatrix Jn = symplectic_form(n);
  const ComplexMatrix Sm = annihilation_map(m);

  const ComplexMatrix KK = p.K.adjoint() * p.K;
  RealMatrix A = 2.0 * Jn * (p.R + KK.imag());
  RealMatrix B = 4.0 * Jn * (p.K.adjoint() * p.S * Sm).imag();
  RealMatrix C(2 * m, 2 * n);
  RealMatrix D(2 * m, 2 * m);
  for (Index j = 0; j < m; ++j) {
    C.row(2 * j) = 2.0 * p.K.row(j).real();
    C.row(2 * j + 1) = 2.0 * p.K.row(j).imag();
    for (Index k = 0; k < m; ++k) {
      const Complex s = p.S(j, k);
      D.block<2, 2>(2 * j, 2 * k) << s.real(), -s.imag(), s.imag(), s.real();
    }
  }
  return QuadratureModel(std::move(A), std::move(B), std::move(C), std::move(D));
}

OutputCompletion complete_outputs(const QuadratureModel& G) {
  const Index m = G.m();
  const Index missing = 2 * m - G.ny();
  if (missing == 0)
    return {RealMatrix(0, 2 * G.n()), RealMatrix(0, 2 * m)};

  const RealMatrix Jm = symplectic_form(m);
  auto omega = [&](const RealVector& u, const RealVector& v) {
    return u.dot(Jm * v);
  };
  std::vector<RealVector> e, f;
  for (Index k = 0; k < G.ny() / 2; ++k) {
    e.push_back(G.D().row(2 * k).transpose());
    f.push_back(G.D().row(2 * k + 1).transpose());
  }
  auto project = [&](RealVector c) {
    const RealVector c0 = c;
    for (std::size_t k = 0; k < e.size(); ++k)
      c -= omega(c0, f[k]) * e[k] - omega(c0, e[k]) * f[k];
    return c;
  };

  RealMatrix Dp(missing, 2 * m);
  for (Index row = 0; row < missing; row += 2) {
    // Standard basis vectors, projected; the largest survivor seeds the pair.
    RealVector best;
    double best_norm = 0.0;
    for (Index i = 0; i < 2 * m; ++i) {
      RealVector c = project(RealVector::Unit(2 * m, i));
      const double nc = c.norm();
      if (nc > best_norm + 1e-12) {
        best_norm = nc;
        best = c;
      }
    }
    if (best_norm < 1e-10)
      throw Error(ErrorCode::CompletionFailure, "no vector left to complete D");
    RealVector ev = best / best_norm;
    RealVector fv = project(Jm.transpose() * ev);
    double w = omega(ev, fv);
    if (std::abs(w) < 1e-10) {
      double best_w = 0.0;
      for (Index i = 0; i < 2 * m; ++i) {
        RealVector c = project(RealVector::Unit(2 * m, i));
        const double wc = omega(ev, c);
        if (std::abs(wc) > std::abs(best_w)) {
          best_w = wc;
          fv = c;
        }
      }
      w = best_w;
      if (std::abs(w) < 1e-10)
        throw Error(ErrorCode::CompletionFailure,
                    "symplectic Gram-Schmidt pivot " + std::to_string(std::abs(w)));
    }
    fv /= w;
    e.push_back(ev);
    f.push_back(fv);
    Dp.row(row) = ev.transpose();
    Dp.row(row + 1) = fv.transpose();
  }
  // Solves J_n C'^T + B J_m D'^T = 0 for C'.
  RealMatrix Cp = Dp * Jm * G.B().transpose() * symplectic_form(G.n());
  return {std::move(Cp), std::move(Dp)};
}

QuadratureModel with_completed_outputs(const QuadratureModel& G) {
  const OutputCompletion oc = complete_outputs(G);
  RealMatrix C(2 * G.m(), 2 * G.n()), D(2 * G.m(), 2 * G.m());
  C << G.C(), oc.Cp;
  D << G.D(), oc.Dp;
  return QuadratureModel(G.A(), G.B(), std::move(C), std::move(D));
}

SlhParams reconstruct_slh(const QuadratureModel& G) {
  const QuadratureModel full = with_completed_outputs(G);
  const Index n = G.n(), m = G.m();
  SlhParams p;
  p.K.resize(m, 2 * n);
  p.S.resize(m, m);
  for (Index j = 0; j < m; ++j) {
    p.K.row(j) = 0.5 * (full.C().row(2 * j).cast<Complex>() +
                        kI * full.C().row(2 * j + 1).cast<Complex>());
    for (Index k = 0; k < m; ++k)
      p.S(j, k) = Complex(full.D()(2 * j, 2 * k), full.D()(2 * j + 1, 2 * k));
  }
  const double u = unitarity_defect(p.S);
  if (u > 1e-8)
    throw Error(ErrorCode::NonUnitaryScattering,
                "completed D is not unitary symplectic (defect " +
                    std::to_string(u) + ")");
  const RealMatrix Jn = symplectic_form(n);
  p.R = symmetrize(-0.5 * Jn * G.A() - (p.K.adjoint() * p.K).imag());
  return p;
}

ComplexMatrix transfer_function_at(const QuadratureModel& G, Complex s) {
  return evaluate_transfer(G.A(), G.B(), G.C(), G.D(), s);
}

HinfResult hinf_norm(const QuadratureModel& G, double rel_tol) {
  return hinf_norm(G.A(), G.B(), G.C(), G.D(), rel_tol);
}

QuadratureModel difference_system(const QuadratureModel& G1,
                                  const QuadratureModel& G2) {
  if (G1.m() != G2.m() || G1.ny() != G2.ny())
    throw Error(ErrorCode::DimensionMismatch,
                "difference of systems with different channel counts");
  RealMatrix B(G1.B().rows() + G2.B().rows(), G1.B().cols());
  B << G1.B(), G2.B();
  RealMatrix C(G1.ny(), G1.C().cols() + G2.C().cols());
  C << G1.C(), -G2.C();
  return QuadratureModel(block_diag(G1.A(), G2.A()), std::move(B), std::move(C),
                         G1.D() - G2.D());
}

namespace {

ComplexMatrix gaussian_complex(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> N(0.0, 1.0 / std::sqrt(2.0));
  ComplexMatrix M(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) M(i, j) = Complex(N(rng), N(rng));
  return M;
}

ComplexMatrix random_unitary(Index m, std::mt19937_64& rng) {
  Eigen::HouseholderQR<ComplexMatrix> qr(gaussian_complex(m, m, rng));
  ComplexMatrix Q = qr.householderQ();
  const ComplexMatrix Rm = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < m; ++k) {
    const Complex d = Rm(k, k);
    if (std::abs(d) > 0.0) Q.col(k) *= d / std::abs(d);
  }
  return Q;
}

}  // namespace

RandomSystem random_pr_system(Index n, Index m, std::uint64_t seed,
                              bool stable) {
  if (n < 1 || m < 1)
    throw Error(ErrorCode::BadRange, "random_pr_system needs n, m >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0.0, 1.0);
  const ComplexMatrix Sn = annihilation_map(n);
  for (int attempt = 0; attempt < 100; ++attempt) {
    RealMatrix G(2 * n, 2 * n);
    for (Index j = 0; j < 2 * n; ++j)
      for (Index i = 0; i < 2 * n; ++i) G(i, j) = N(rng);
    const ComplexMatrix H = gaussian_complex(n, n, rng);
    // A passive core plus squeezing and creation-type terms: generic (not
    // passive) yet stable often enough for small channel counts.
    const ComplexMatrix K = gaussian_complex(m, n, rng) * Sn +
                            0.2 * gaussian_complex(m, n, rng) * Sn.conjugate();
    const RealMatrix R =
        symmetrize((Sn.adjoint() * (0.5 * (H + H.adjoint())) * Sn).real()) +
        0.1 * symmetrize(G);
    SlhParams p{ComplexMatrix::Identity(m, m), K, R};
    QuadratureModel model = build_from_slh(p);
    if (!stable || is_hurwitz(model.A())) return RandomSystem{std::move(p), std::move(model)};
  }
  throw Error(ErrorCode::StabilityRetryExhausted,
              "no Hurwitz draw in 100 attempts (seed " + std::to_string(seed) + ")");
}

RandomSystem random_cp_system(Index n, Index m, std::uint64_t seed,
                              bool scatter) {
  if (n < 1 || m < 1)
    throw Error(ErrorCode::BadRange, "random_cp_system needs n, m >= 1");
  std::mt19937_64 rng(seed);
  const ComplexMatrix Sn = annihilation_map(n);
  for (int attempt = 0; attempt < 100; ++attempt) {
    const ComplexMatrix G = gaussian_complex(n, n, rng);
    const ComplexMatrix Rt = 0.5 * (G + G.adjoint());
    const ComplexMatrix Kt = gaussian_complex(m, n, rng);
    ComplexMatrix S = scatter ? random_unitary(m, rng) : ComplexMatrix::Identity(m, m);
    SlhParams p{std::move(S), Kt * Sn,
                symmetrize((Sn.adjoint() * Rt * Sn).real())};
    QuadratureModel model = build_from_slh(p);
    if (is_hurwitz(model.A())) return RandomSystem{std::move(p), std::move(model)};
  }
  throw Error(ErrorCode::StabilityRetryExhausted,
              "no Hurwitz draw in 100 attempts (seed " + std::to_string(seed) + ")");
}

}  // namespace qlmor
