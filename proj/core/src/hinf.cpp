#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "qlmor/error.hpp"
#include "qlmor/numerics.hpp"

namespace qlmor {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Plant {
  const RealMatrix& A;
  const RealMatrix& B;
  const RealMatrix& C;
  const RealMatrix& D;

  double gain(double w) const {
    return max_singular_value(evaluate_transfer(A, B, C, D, Complex(0.0, w)));
  }
};

// Imaginary-axis crossing frequencies (w >= 0) of the level-gamma Hamiltonian,
// or nullopt when the Hamiltonian is too ill-conditioned to trust.
std::optional<std::vector<double>> crossings(const Plant& p, double gamma) {
  const Index n = p.A.rows();
  const Index m = p.B.cols();
  const Index ny = p.C.rows();
  const double g2 = gamma * gamma;
  RealMatrix R = p.D.transpose() * p.D - g2 * RealMatrix::Identity(m, m);
  RealMatrix S = p.D * p.D.transpose() - g2 * RealMatrix::Identity(ny, ny);

  Eigen::SelfAdjointEigenSolver<RealMatrix> er(R, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(S, Eigen::EigenvaluesOnly);
  const double rmin = m > 0 ? er.eigenvalues().cwiseAbs().minCoeff() : g2;
  const double smin = ny > 0 ? es.eigenvalues().cwiseAbs().minCoeff() : g2;
  if (std::min(rmin, smin) < 1e-12 * g2) return std::nullopt;

  const RealMatrix Rinv = R.inverse();
  const RealMatrix Sinv = S.inverse();
  RealMatrix H(2 * n, 2 * n);
  H.topLeftCorner(n, n) = p.A - p.B * Rinv * p.D.transpose() * p.C;
  H.topRightCorner(n, n) = -gamma * p.B * Rinv * p.B.transpose();
  H.bottomLeftCorner(n, n) = gamma * p.C.transpose() * Sinv * p.C;
  H.bottomRightCorner(n, n) =
      -p.A.transpose() + p.C.transpose() * p.D * Rinv * p.B.transpose();
  if (!H.allFinite()) return std::nullopt;

  Eigen::EigenSolver<RealMatrix> eh(H, false);
  if (eh.info() != Eigen::Success) return std::nullopt;
  const double tol = 1e-6 * std::max(1.0, H.norm());
  std::vector<double> ws;
  for (Index k = 0; k < eh.eigenvalues().size(); ++k) {
    const Complex lam = eh.eigenvalues()(k);
    if (std::abs(lam.real()) <= tol) ws.push_back(std::abs(lam.imag()));
  }
  std::sort(ws.begin(), ws.end());
  return ws;
}

struct Best {
  double value = -1.0;
  double freq = 0.0;
  void offer(double v, double w) {
    if (v > value) {
      value = v;
      freq = w;
    }
  }
};

// Golden-section refinement of the gain on [a, b], in log-frequency when
// both ends are positive.
void golden_refine(const Plant& p, double a, double b, Best& best) {
  const bool use_log = a > 0.0;
  double lo = use_log ? std::log(a) : a;
  double hi = use_log ? std::log(b) : b;
  auto eval = [&](double t) {
    const double w = use_log ? std::exp(t) : t;
    const double v = p.gain(w);
    best.offer(v, w);
    return v;
  };
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = eval(x1), f2 = eval(x2);
  for (int it = 0; it < 80 && (hi - lo) > 1e-12 * std::max(1.0, std::abs(hi));
       ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = eval(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = eval(x1);
    }
  }
}

HinfResult grid_fallback(const Plant& p, const std::vector<double>& grid,
                         const std::vector<double>& gains, Best best) {
  // Refine around every local maximum of the sampled gain.
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const bool left = k == 0 || gains[k] >= gains[k - 1];
    const bool right = k + 1 == grid.size() || gains[k] >= gains[k + 1];
    if (!(left && right)) continue;
    const double a = k == 0 ? grid[0] : grid[k - 1];
    const double b = k + 1 == grid.size() ? grid[k] * 10.0 : grid[k + 1];
    if (b > a) golden_refine(p, a, b, best);
  }
  HinfResult r;
  r.value = std::max(best.value, 0.0);
  r.peak_frequency = best.freq;
  r.grid_fallback = true;
  return r;
}

}  // namespace

HinfResult hinf_norm(const RealMatrix& A, const RealMatrix& B,
                     const RealMatrix& C, const RealMatrix& D,
                     double rel_tol) {
  const Index n = A.rows();
  if (A.cols() != n || B.rows() != n || C.cols() != n ||
      D.rows() != C.rows() || D.cols() != B.cols())
    throw Error(ErrorCode::DimensionMismatch, "hinf_norm: inconsistent (A,B,C,D)");
  const double dgain = max_singular_value(D);
  if (n == 0) return HinfResult{dgain, 0.0, false, 0};
  if (!is_hurwitz(A))
    throw Error(ErrorCode::NotHurwitz, "hinf_norm requires a Hurwitz A");

  const Plant p{A, B, C, D};
  Eigen::EigenSolver<RealMatrix> ea(A, false);
  const ComplexVector lam = ea.eigenvalues();
  const double mag_min = lam.cwiseAbs().minCoeff();
  const double mag_max = lam.cwiseAbs().maxCoeff();

  std::vector<double> grid = logspace(mag_min * 1e-3, mag_max * 1e3, 300);
  for (Index k = 0; k < lam.size(); ++k)
    if (lam(k).imag() > 0.0) grid.push_back(lam(k).imag());
  grid.push_back(0.0);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  Best best;
  std::vector<double> gains;
  gains.reserve(grid.size());
  for (double w : grid) {
    gains.push_back(p.gain(w));
    best.offer(gains.back(), w);
  }
  best.offer(dgain, kInf);

  // A peak this far below the natural gain scale makes the Hamiltonian
  // blocks overflow relative to A.
  const double scale = dgain + B.norm() * C.norm() / std::max(mag_min, 1e-300);
  if (best.value <= 1e-8 * scale) return grid_fallback(p, grid, gains, best);

  int iters = 0;
  auto probe = [&](double gamma) -> std::optional<bool> {
    ++iters;
    auto ws = crossings(p, gamma);
    if (!ws) return std::nullopt;
    if (ws->empty()) return false;
    std::vector<double> cand = *ws;
    for (std::size_t k = 0; k + 1 < ws->size(); ++k)
      cand.push_back(0.5 * ((*ws)[k] + (*ws)[k + 1]));
    double vmax = -1.0;
    for (double w : cand) {
      const double v = p.gain(w);
      vmax = std::max(vmax, v);
      best.offer(v, w);
    }
    return vmax >= gamma * (1.0 - 1e-8);
  };

  double lo = best.value;
  double hi = 2.0 * lo;
  for (int k = 0;; ++k) {
    auto above = probe(hi);
    if (!above) return grid_fallback(p, grid, gains, best);
    if (!*above) break;
    lo = std::max(lo, best.value);
    hi = 2.0 * std::max(hi, lo);
    if (k > 60) return grid_fallback(p, grid, gains, best);
  }
  while (hi - lo > rel_tol * lo) {
    const double mid = 0.5 * (lo + hi);
    auto above = probe(mid);
    if (!above) return grid_fallback(p, grid, gains, best);
    if (*above)
      lo = std::max(mid * (1.0 - 1e-8), best.value);
    else
      hi = mid;
    lo = std::max(lo, best.value);
    if (iters > 200) break;
  }

  HinfResult r;
  r.value = best.value;
  r.peak_frequency = best.freq;
  r.iterations = iters;
  return r;
}

}  // namespace qlmor
