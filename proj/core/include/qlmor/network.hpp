#pragma once

// The N-cavity optical low-pass chain: each cavity has mirrors M1 and M2 with
// equal decay rate gamma, and M1's output of cavity j-1 drives M2 of cavity
// j. The model is written in the rotating frame of the carrier, so the
// carrier frequency never enters (A, B, C, D).

#include <vector>

#include "qlmor/lqss.hpp"
#include "qlmor/reduction.hpp"

namespace qlmor {

struct CavityNetworkSpec {
  Index N = 5;
  double gamma = 12e6;        // mirror decay rate
  double carrier = 0.0;       // metadata only
};

/// One mode, channels (M1, M2), K = sqrt(gamma)/2 [[1, i], [1, i]], S = I,
/// R = 0.
SlhParams build_cavity(double gamma);

/// n = N modes, 2(N+1) input quadratures and the 2 output quadratures of M1
/// of the last cavity. The input entering M2 of the first cavity is the last
/// input pair. Throws BadRange for N < 1 or gamma <= 0.
QuadratureModel build_network(const CavityNetworkSpec& spec);

/// Magnitude and unwrapped phase of the last input pair driving the first
/// output pair: channel 1 is (last-but-one input -> output 0), channel 2 is
/// (last input -> output 1).
struct FrequencyResponse {
  std::vector<double> omega;  // rad/s
  std::vector<double> mag1, phase1, mag2, phase2;
};

FrequencyResponse frequency_response(const QuadratureModel& G,
                                     const std::vector<double>& omegas);

/// Adds multiples of 2 pi so consecutive entries differ by at most pi.
std::vector<double> unwrap_phase(std::vector<double> phase);

/// `points` log-spaced frequencies over gamma * [1e-2, 1e2].
std::vector<double> example_grid(double gamma, int points = 400);

struct ExampleBundle {
  QuadratureModel network;
  TruncationReport report;
  FrequencyResponse full;
  FrequencyResponse reduced;
};

ExampleBundle run_example(Index N, double gamma, Index keep);

}  // namespace qlmor
