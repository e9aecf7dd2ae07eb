#pragma once

// Linear quantum stochastic systems: the SLH parameterization, the real
// quadrature state-space model (A, B, C, D), physical realizability, complete
// passivity, network products and subsystem truncation.
//
// Quadrature conventions: modes x = (q1, p1, ..., qn, pn) with annihilation
// operators a = Sigma_n x, and input fields w = 2 (Re A1, Im A1, ...) where
// Sigma_n has row j equal to (e_{2j-1} + i e_{2j}) / 2. Hamiltonian
// H = x^T R x / 2, coupling L = K x. Channel and mode indices are 0-based.

#include <cstdint>
#include <vector>

#include "qlmor/numerics.hpp"
#include "qlmor/symplectic.hpp"

namespace qlmor {

struct SlhParams {
  ComplexMatrix S;  // m x m unitary
  ComplexMatrix K;  // m x 2n
  RealMatrix R;     // 2n x 2n symmetric

  Index modes() const { return R.rows() / 2; }
  Index channels() const { return S.rows(); }

  /// Throws DimensionMismatch, NotSymmetric or NonUnitaryScattering.
  void validate() const;

  /// m pass-through channels, no modes.
  static SlhParams identity(Index m);
};

struct PassiveParams {
  ComplexMatrix Rtilde;  // n x n Hermitian, H = a^* Rtilde a / 2 + const
  ComplexMatrix Ktilde;  // m x n, L = Ktilde a
  RealMatrix theta;      // arg Ktilde
  RealMatrix gamma;      // |Ktilde|^2
};

/// Immutable (A, B, C, D) with n modes, m input channels and n_y output
/// quadratures. Dimensions are validated on construction and physical
/// realizability is evaluated once and recorded in pr_certified().
class QuadratureModel {
 public:
  /// Throws DimensionMismatch for inconsistent or odd shapes and
  /// non-finite entries.
  QuadratureModel(RealMatrix A, RealMatrix B, RealMatrix C, RealMatrix D);

  Index n() const { return A_.rows() / 2; }
  Index m() const { return B_.cols() / 2; }
  Index ny() const { return C_.rows(); }
  const RealMatrix& A() const { return A_; }
  const RealMatrix& B() const { return B_; }
  const RealMatrix& C() const { return C_; }
  const RealMatrix& D() const { return D_; }
  bool pr_certified() const { return pr_certified_; }

 private:
  RealMatrix A_, B_, C_, D_;
  bool pr_certified_ = false;
};

struct PrReport {
  double realizability = 0.0;  // A J + J A^T + B J_m B^T
  double coupling = 0.0;       // J C^T + B J_m D^T
  double scattering = 0.0;     // D J_m D^T - J_{n_y/2}
  double tol = 0.0;

  double worst() const;
  bool passed() const { return worst() <= tol; }
};

constexpr double kPrTol = 1e-8;

/// Each residual is a Frobenius norm divided by max(1, natural scale).
PrReport check_physical_realizability(const QuadratureModel& G,
                                      double tol = kPrTol);

QuadratureModel build_from_slh(const SlhParams& p);

struct OutputCompletion {
  RealMatrix Cp;  // (2m - n_y) x 2n
  RealMatrix Dp;  // (2m - n_y) x 2m
};

/// Rows D' completing D to a symplectic matrix [D; D'] and C' = D' J_m B^T J_n,
/// the unique C' satisfying the coupling condition for the new rows.
/// Throws CompletionFailure when the symplectic Gram-Schmidt pivot drops
/// below 1e-10.
OutputCompletion complete_outputs(const QuadratureModel& G);

/// G with completed outputs appended so that n_y = 2m.
QuadratureModel with_completed_outputs(const QuadratureModel& G);

/// Inverts build_from_slh after completing outputs. Throws
/// NonUnitaryScattering when the completed D is not unitary symplectic.
SlhParams reconstruct_slh(const QuadratureModel& G);

struct PassivityCheck {
  bool passive = false;
  PassiveParams params;
};

PassivityCheck is_completely_passive(const SlhParams& p, double tol = 1e-9);
PassivityCheck is_completely_passive(const QuadratureModel& G,
                                     double tol = 1e-9);

/// Block-diagonal S and R; K zero-padded across the mode sets.
SlhParams concatenate(const SlhParams& g1, const SlhParams& g2);

/// Feeds every output of g1 into g2. Modes are ordered (x1; x2).
/// Throws ChannelMismatch.
SlhParams series(const SlhParams& g2, const SlhParams& g1);

/// Routes output pairs `out_pairs` of `up` into input pairs `in_pairs` of
/// `down`. State is (x_up; x_down); inputs are all of up's followed by
/// down's unconnected ones; outputs are all of down's followed by up's
/// unconnected ones. Throws IndexOverlap or DimensionMismatch.
QuadratureModel interconnect_partial(const QuadratureModel& up,
                                     const std::vector<Index>& out_pairs,
                                     const QuadratureModel& down,
                                     const std::vector<Index>& in_pairs);

/// Keeps the listed output pairs, in the listed order.
QuadratureModel select_outputs(const QuadratureModel& G,
                               const std::vector<Index>& pairs);

/// New input pair k is old input pair perm[k].
QuadratureModel permute_inputs(const QuadratureModel& G,
                               const std::vector<Index>& perm);

/// Pair-block permutation matrix with new mode k taken from old mode perm[k].
RealMatrix mode_permutation_matrix(const std::vector<Index>& perm);

QuadratureModel permute_modes(const QuadratureModel& G,
                              const std::vector<Index>& perm);

/// Leading r modes. Throws BadRange unless 1 <= r < n.
QuadratureModel truncate_subsystem(const QuadratureModel& G, Index r);

/// (T A T^-1, T B, C T^-1, D).
QuadratureModel symplectic_similarity(const QuadratureModel& G,
                                      const SymplecticTransform& T);

ComplexMatrix transfer_function_at(const QuadratureModel& G, Complex s);

HinfResult hinf_norm(const QuadratureModel& G, double rel_tol = 1e-6);

/// Error system G1 - G2 sharing inputs and outputs.
QuadratureModel difference_system(const QuadratureModel& G1,
                                  const QuadratureModel& G2);

/// Sigma_n: n x 2n with row j = (e_{2j} + i e_{2j+1}) / 2.
ComplexMatrix annihilation_map(Index n);

/// W = 2 [Sigma; conj(Sigma)] T [Sigma^*, Sigma^T], the action of T on
/// (a; a^#). For unitary symplectic T this is diag(W1, conj(W1)).
ComplexMatrix annihilation_basis_change(const RealMatrix& T);

struct RandomSystem {
  SlhParams slh;
  QuadratureModel model;
};

/// Passive Gaussian core (Hermitian Rtilde, annihilation coupling) perturbed
/// by squeezing terms in R and creation terms in K; S = I, all outputs kept.
/// With `stable` the draw is repeated (up to 100 times) until A is Hurwitz.
/// Throws StabilityRetryExhausted.
RandomSystem random_pr_system(Index n, Index m, std::uint64_t seed,
                              bool stable = false);

/// Completely passive draw: Rtilde Hermitian (GUE), Ktilde complex Gaussian,
/// S Haar-like unitary when `scatter` is set, else I. Repeated until A is
/// Hurwitz. Throws StabilityRetryExhausted.
RandomSystem random_cp_system(Index n, Index m, std::uint64_t seed,
                              bool scatter = false);

}  // namespace qlmor
