#include <algorithm>
#include <cmath>

#include "qlmor/error.hpp"
#include "qlmor/lqss.hpp"

namespace qlmor {

// A completely passive H = a^* Rtilde a / 2 gives 2x2 blocks of R of the
// form [[alpha, -beta], [beta, alpha]] / 4 with Rtilde_jk = alpha + i beta,
// i.e. J R = R J. L = Ktilde a means K(:, 2j+1) = i K(:, 2j).
PassivityCheck is_completely_passive(const SlhParams& p, double tol) {
  PassivityCheck out;
  const Index n = p.modes(), m = p.channels();
  if (p.S.rows() != p.S.cols() || p.K.rows() != m || p.K.cols() != 2 * n)
    return out;
  if ((p.S * p.S.adjoint() - ComplexMatrix::Identity(m, m)).norm() > 1e-10)
    return out;

  const double scale = std::max({1.0, p.R.norm(), p.K.squaredNorm()});
  const RealMatrix J = symplectic_form(n);
  if ((J * p.R - p.R * J).norm() > tol * scale) return out;

  const Complex i(0.0, 1.0);
  double kdefect = 0.0;
  for (Index j = 0; j < n; ++j)
    kdefect += (p.K.col(2 * j + 1) - i * p.K.col(2 * j)).squaredNorm();
  if (std::sqrt(kdefect) > tol * std::sqrt(scale)) return out;

  PassiveParams pp;
  pp.Rtilde.resize(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index k = 0; k < n; ++k)
      pp.Rtilde(j, k) = 4.0 * Complex(p.R(2 * j, 2 * k), p.R(2 * j + 1, 2 * k));
  pp.Ktilde.resize(m, n);
  for (Index j = 0; j < n; ++j) pp.Ktilde.col(j) = 2.0 * p.K.col(2 * j);
  pp.theta = pp.Ktilde.array().arg().matrix();
  pp.gamma = pp.Ktilde.array().abs2().matrix();

  out.passive = true;
  out.params = std::move(pp);
  return out;
}

PassivityCheck is_completely_passive(const QuadratureModel& G, double tol) {
  try {
    return is_completely_passive(reconstruct_slh(G), tol);
  } catch (const Error&) {
    return PassivityCheck{};
  }
}

}  // namespace qlmor
