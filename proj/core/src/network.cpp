#include "qlmor/network.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "qlmor/error.hpp"

namespace qlmor {

SlhParams build_cavity(double gamma) {
  if (!(gamma > 0.0))
    throw Error(ErrorCode::BadRange, "decay rate must be positive");
  const double g = 0.5 * std::sqrt(gamma);
  ComplexMatrix K(2, 2);
  K << Complex(g, 0.0), Complex(0.0, g), Complex(g, 0.0), Complex(0.0, g);
  return SlhParams{ComplexMatrix::Identity(2, 2), K, RealMatrix::Zero(2, 2)};
}

QuadratureModel build_network(const CavityNetworkSpec& spec) {
  if (spec.N < 1)
    throw Error(ErrorCode::BadRange, "network needs at least one cavity");
  const QuadratureModel cavity = build_from_slh(build_cavity(spec.gamma));
  QuadratureModel chain = cavity;
  for (Index j = 1; j < spec.N; ++j)
    chain = interconnect_partial(chain, {0}, cavity, {1});

  // Inputs are now (M1, M2 of cavity 1, M1 of cavities 2..N); move the
  // drive on M2 of cavity 1 to the end.
  std::vector<Index> perm{0};
  for (Index k = 2; k <= spec.N; ++k) perm.push_back(k);
  perm.push_back(1);
  return select_outputs(permute_inputs(chain, perm), {0});
}

std::vector<double> unwrap_phase(std::vector<double> phase) {
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t k = 1; k < phase.size(); ++k) {
    const double jump = phase[k] - phase[k - 1];
    phase[k] -= two_pi * std::round(jump / two_pi);
  }
  return phase;
}

FrequencyResponse frequency_response(const QuadratureModel& G,
                                     const std::vector<double>& omegas) {
  if (G.ny() < 2 || G.m() < 1)
    throw Error(ErrorCode::DimensionMismatch,
                "frequency response needs an input and an output pair");
  const Index c1 = G.B().cols() - 2, c2 = G.B().cols() - 1;
  FrequencyResponse fr;
  fr.omega = omegas;
  for (double w : omegas) {
    const ComplexMatrix H = transfer_function_at(G, Complex(0.0, w));
    fr.mag1.push_back(std::abs(H(0, c1)));
    fr.phase1.push_back(std::arg(H(0, c1)));
    fr.mag2.push_back(std::abs(H(1, c2)));
    fr.phase2.push_back(std::arg(H(1, c2)));
  }
  fr.phase1 = unwrap_phase(std::move(fr.phase1));
  fr.phase2 = unwrap_phase(std::move(fr.phase2));
  return fr;
}

std::vector<double> example_grid(double gamma, int points) {
  return logspace(1e-2 * gamma, 1e2 * gamma, points);
}

ExampleBundle run_example(Index N, double gamma, Index keep) {
  CavityNetworkSpec spec;
  spec.N = N;
  spec.gamma = gamma;
  QuadratureModel net = build_network(spec);
  TruncationReport rep = reduce(net, keep);
  const std::vector<double> grid = example_grid(gamma);
  FrequencyResponse full = frequency_response(net, grid);
  FrequencyResponse red = frequency_response(rep.reduced, grid);
  return ExampleBundle{std::move(net), std::move(rep), std::move(full),
                       std::move(red)};
}

}  // namespace qlmor
