#include <algorithm>
#include <set>
#include <string>

#include "qlmor/error.hpp"
#include "qlmor/lqss.hpp"

namespace qlmor {

namespace {

// Columns (or rows) 2k, 2k+1 for each pair index k.
std::vector<Index> expand_pairs(const std::vector<Index>& pairs) {
  std::vector<Index> idx;
  for (Index k : pairs) {
    idx.push_back(2 * k);
    idx.push_back(2 * k + 1);
  }
  return idx;
}

RealMatrix take_cols(const RealMatrix& M, const std::vector<Index>& cols) {
  RealMatrix out(M.rows(), static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    out.col(static_cast<Index>(j)) = M.col(cols[j]);
  return out;
}

RealMatrix take_rows(const RealMatrix& M, const std::vector<Index>& rows) {
  RealMatrix out(static_cast<Index>(rows.size()), M.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    out.row(static_cast<Index>(i)) = M.row(rows[i]);
  return out;
}

void check_pairs(const std::vector<Index>& pairs, Index count,
                 const char* what) {
  std::set<Index> seen;
  for (Index k : pairs) {
    if (k < 0 || k >= count)
      throw Error(ErrorCode::DimensionMismatch,
                  std::string(what) + " pair index " + std::to_string(k) +
                      " out of range [0, " + std::to_string(count) + ")");
    if (!seen.insert(k).second)
      throw Error(ErrorCode::IndexOverlap,
                  std::string(what) + " pair index " + std::to_string(k) +
                      " repeated");
  }
}

std::vector<Index> complement(const std::vector<Index>& pairs, Index count) {
  std::vector<Index> rest;
  for (Index k = 0; k < count; ++k)
    if (std::find(pairs.begin(), pairs.end(), k) == pairs.end()) rest.push_back(k);
  return rest;
}

void check_permutation(const std::vector<Index>& perm, Index count) {
  if (static_cast<Index>(perm.size()) != count)
    throw Error(ErrorCode::DimensionMismatch,
                "permutation has " + std::to_string(perm.size()) +
                    " entries, expected " + std::to_string(count));
  check_pairs(perm, count, "permutation");
}

}  // namespace

SlhParams concatenate(const SlhParams& g1, const SlhParams& g2) {
  g1.validate();
  g2.validate();
  const Index m1 = g1.channels(), m2 = g2.channels();
  const Index d1 = g1.R.rows(), d2 = g2.R.rows();
  SlhParams out;
  out.S = ComplexMatrix::Zero(m1 + m2, m1 + m2);
  out.S.topLeftCorner(m1, m1) = g1.S;
  out.S.bottomRightCorner(m2, m2) = g2.S;
  out.K = ComplexMatrix::Zero(m1 + m2, d1 + d2);
  out.K.topLeftCorner(m1, d1) = g1.K;
  out.K.bottomRightCorner(m2, d2) = g2.K;
  out.R = block_diag(g1.R, g2.R);
  return out;
}

SlhParams series(const SlhParams& g2, const SlhParams& g1) {
  g1.validate();
  g2.validate();
  if (g1.channels() != g2.channels())
    throw Error(ErrorCode::ChannelMismatch,
                "series product needs equal channel counts (" +
                    std::to_string(g1.channels()) + " vs " +
                    std::to_string(g2.channels()) + ")");
  const Index m = g1.channels();
  const Index d1 = g1.R.rows(), d2 = g2.R.rows();
  ComplexMatrix K1 = ComplexMatrix::Zero(m, d1 + d2);
  ComplexMatrix K2 = ComplexMatrix::Zero(m, d1 + d2);
  K1.leftCols(d1) = g1.K;
  K2.rightCols(d2) = g2.K;

  SlhParams out;
  out.S = g2.S * g1.S;
  out.K = g2.S * K1 + K2;
  // Im{L2^* S2 L1} = x^T sym(M) x with M = Im{K2^* S2 K1}; H = x^T R x / 2.
  const RealMatrix M = (K2.adjoint() * g2.S * K1).imag();
  out.R = block_diag(g1.R, g2.R) + M + M.transpose();
  return out;
}

QuadratureModel interconnect_partial(const QuadratureModel& up,
                                     const std::vector<Index>& out_pairs,
                                     const QuadratureModel& down,
                                     const std::vector<Index>& in_pairs) {
  if (out_pairs.size() != in_pairs.size())
    throw Error(ErrorCode::DimensionMismatch,
                "connecting " + std::to_string(out_pairs.size()) +
                    " outputs to " + std::to_string(in_pairs.size()) + " inputs");
  check_pairs(out_pairs, up.ny() / 2, "output");
  check_pairs(in_pairs, down.m(), "input");

  const std::vector<Index> uo = expand_pairs(out_pairs);
  const std::vector<Index> di = expand_pairs(in_pairs);
  const std::vector<Index> df = expand_pairs(complement(in_pairs, down.m()));
  const std::vector<Index> ur = expand_pairs(complement(out_pairs, up.ny() / 2));

  const RealMatrix Cu = take_rows(up.C(), uo);
  const RealMatrix Du = take_rows(up.D(), uo);
  const RealMatrix Bin = take_cols(down.B(), di);
  const RealMatrix Bfree = take_cols(down.B(), df);
  const RealMatrix Din = take_cols(down.D(), di);
  const RealMatrix Dfree = take_cols(down.D(), df);

  const Index su = up.A().rows(), sd = down.A().rows();
  const Index wu = up.B().cols(), wf = static_cast<Index>(df.size());
  const Index yd = down.ny(), yr = static_cast<Index>(ur.size());

  RealMatrix A = RealMatrix::Zero(su + sd, su + sd);
  A.topLeftCorner(su, su) = up.A();
  A.bottomLeftCorner(sd, su) = Bin * Cu;
  A.bottomRightCorner(sd, sd) = down.A();

  RealMatrix B = RealMatrix::Zero(su + sd, wu + wf);
  B.topLeftCorner(su, wu) = up.B();
  B.bottomLeftCorner(sd, wu) = Bin * Du;
  B.bottomRightCorner(sd, wf) = Bfree;

  RealMatrix C = RealMatrix::Zero(yd + yr, su + sd);
  C.topLeftCorner(yd, su) = Din * Cu;
  C.topRightCorner(yd, sd) = down.C();
  C.bottomLeftCorner(yr, su) = take_rows(up.C(), ur);

  RealMatrix D = RealMatrix::Zero(yd + yr, wu + wf);
  D.topLeftCorner(yd, wu) = Din * Du;
  D.topRightCorner(yd, wf) = Dfree;
  D.bottomLeftCorner(yr, wu) = take_rows(up.D(), ur);

  return QuadratureModel(std::move(A), std::move(B), std::move(C), std::move(D));
}

QuadratureModel select_outputs(const QuadratureModel& G,
                               const std::vector<Index>& pairs) {
  check_pairs(pairs, G.ny() / 2, "output");
  const std::vector<Index> rows = expand_pairs(pairs);
  return QuadratureModel(G.A(), G.B(), take_rows(G.C(), rows),
                         take_rows(G.D(), rows));
}

QuadratureModel permute_inputs(const QuadratureModel& G,
                               const std::vector<Index>& perm) {
  check_permutation(perm, G.m());
  const std::vector<Index> cols = expand_pairs(perm);
  return QuadratureModel(G.A(), take_cols(G.B(), cols), G.C(),
                         take_cols(G.D(), cols));
}

RealMatrix mode_permutation_matrix(const std::vector<Index>& perm) {
  const Index n = static_cast<Index>(perm.size());
  check_permutation(perm, n);
  RealMatrix P = RealMatrix::Zero(2 * n, 2 * n);
  for (Index k = 0; k < n; ++k) {
    P(2 * k, 2 * perm[k]) = 1.0;
    P(2 * k + 1, 2 * perm[k] + 1) = 1.0;
  }
  return P;
}

QuadratureModel permute_modes(const QuadratureModel& G,
                              const std::vector<Index>& perm) {
  check_permutation(perm, G.n());
  const RealMatrix P = mode_permutation_matrix(perm);
  return QuadratureModel(P * G.A() * P.transpose(), P * G.B(),
                         G.C() * P.transpose(), G.D());
}

QuadratureModel truncate_subsystem(const QuadratureModel& G, Index r) {
  if (r < 1 || r >= G.n())
    throw Error(ErrorCode::BadRange,
                "truncation keeps r = " + std::to_string(r) +
                    " modes; need 1 <= r < " + std::to_string(G.n()));
  return QuadratureModel(G.A().topLeftCorner(2 * r, 2 * r),
                         G.B().topRows(2 * r), G.C().leftCols(2 * r), G.D());
}

QuadratureModel symplectic_similarity(const QuadratureModel& G,
                                      const SymplecticTransform& T) {
  if (T.modes() != G.n())
    throw Error(ErrorCode::DimensionMismatch,
                "transform acts on " + std::to_string(T.modes()) +
                    " modes, system has " + std::to_string(G.n()));
  const RealMatrix& M = T.matrix();
  const RealMatrix Minv = T.inverse();
  return QuadratureModel(M * G.A() * Minv, M * G.B(), G.C() * Minv, G.D());
}

}  // namespace qlmor
