#pragma once

// Symplectic structure: the canonical forms, symplectic predicates, the
// Williamson normal form of a positive semidefinite matrix and simultaneous
// normal forms of commuting Gramian pairs.
//
// Coordinates are interleaved, x = (q1, p1, ..., qn, pn), so that
// J_n = diag(J, ..., J) with J = [[0, 1], [-1, 0]].

#include <vector>

#include "qlmor/numerics.hpp"

namespace qlmor {

/// J_n = I_n (x) [[0, 1], [-1, 0]].
RealMatrix symplectic_form(Index n);

/// K_n = [[0, I_n], [-I_n, 0]], the block-ordered counterpart of J_n.
RealMatrix block_symplectic_form(Index n);

/// Permutation taking (q1, p1, ..., qn, pn) to (q1, ..., qn, p1, ..., pn).
/// K_n = Ps J_n Ps^T.
RealMatrix shuffle_permutation(Index n);

struct SymplecticForm {
  Index n = 0;
  RealMatrix Jn;
  RealMatrix Kn;
  RealMatrix Ps;

  explicit SymplecticForm(Index modes);
};

/// A real 2n x 2n matrix certified to satisfy T J_n T^T = J_n.
class SymplecticTransform {
 public:
  /// Throws NotSymplectic when ||T J T^T - J||_F > 1e-8 max(1, ||T||_F^2),
  /// OddDimension for odd or non-square input.
  explicit SymplecticTransform(RealMatrix T);

  static SymplecticTransform identity(Index n);

  const RealMatrix& matrix() const { return T_; }
  double residual() const { return residual_; }
  Index modes() const { return T_.rows() / 2; }

  /// T^{-1} = -J T^T J, exact for symplectic T.
  RealMatrix inverse() const;

  SymplecticTransform compose(const SymplecticTransform& after) const;

 private:
  RealMatrix T_;
  double residual_ = 0.0;
};

/// ||T J T^T - J||_F.
double symplectic_residual(const RealMatrix& T);

/// ||T J T^T - J||_F <= tol. Throws OddDimension.
bool is_symplectic(const RealMatrix& T, double tol);

/// The n largest eigenvalues of i J_n P, descending, clamped at 0.
///
/// Throws NotSymmetric, and NotDiagonalizable when J_n P is defective to
/// working precision or P has an eigenvalue below -1e-10 ||P||.
std::vector<double> symplectic_eigenvalues(const RealMatrix& P);

/// Normalizes an eigendecomposition of K_n P~ (P~ = Ps P Ps^T) into
/// V = [v1 .. vn, conj(v1) .. conj(vn)] with
///   -i V^* K_n V = diag(I, -I),   -i V^{-1} K_n P~ V = diag(sigma, -sigma),
/// sigma descending. Within a degenerate sigma group the columns are
/// orthonormalized by modified Gram-Schmidt under <u, v> = -i u^* K_n v.
struct NormalizedEigenbasis {
  ComplexMatrix V;
  std::vector<double> sigma;
};
NormalizedEigenbasis normalize_eigenbasis(const EigenDecomposition& raw,
                                          Index n);

/// Eigenpairs of K_n P~ with exact pairing: +i sigma vectors followed by
/// their conjugates, plus a real basis of the kernel (eigenvalue 0).
/// Suitable input for normalize_eigenbasis.
EigenDecomposition symplectic_eigenbasis(const RealMatrix& P);

struct WilliamsonResult {
  SymplecticTransform transform;
  std::vector<double> sigma;  // descending
  RealMatrix Sigma;           // diag(sigma_1 I_2, ..., sigma_n I_2)
};

/// Symplectic T with T P T^T = diag(sigma_1 I_2, ..., sigma_n I_2).
///
/// Positive semidefinite P is accepted when J_n P is diagonalizable; the
/// kernel is completed to a real symplectic basis. Throws NotSymmetric,
/// NotDiagonalizable, DegenerateFormBreakdown or SolveFailure.
WilliamsonResult williamson(const RealMatrix& P);

/// diag(s_1 I_2, ..., s_n I_2).
RealMatrix paired_diagonal(const std::vector<double>& s);

/// Averages of each 2x2 diagonal pair of M.
std::vector<double> paired_diagonal_values(const RealMatrix& M);

/// Distance of M from paired-diagonal form, Frobenius.
double paired_diagonal_defect(const RealMatrix& M);

struct CoDiagonalization {
  SymplecticTransform transform;
  RealMatrix SigmaP;  // T P T^T
  RealMatrix SigmaQ;  // T^{-T} Q T^{-1}
};

/// One symplectic T bringing P (by congruence) and Q (by contragredient
/// congruence) to paired-diagonal form, provided [J_n P, Q J_n] = 0.
///
/// Modes are ordered by sigma_P descending; ties are broken by sigma_Q
/// descending. Throws NotCommuting when
/// ||[J P, Q J]||_F > tol ||P||_F ||Q||_F.
CoDiagonalization codiagonalize_commuting(const RealMatrix& P,
                                          const RealMatrix& Q,
                                          double tol = 1e-8);

/// Groups a descending list into runs whose members lie within
/// rel_tol * max(list) of the run's first element. Returns run lengths.
std::vector<Index> group_sizes(const std::vector<double>& descending,
                               double rel_tol = 1e-6);

}  // namespace qlmor
