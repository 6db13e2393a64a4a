// Copyright 2026 The tpk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Brute-force reference computations for the unit tests. These deliberately
// avoid the library's own routines: ranges come from column-pivoted QR,
// intersections from the null space of a stacked basis pair, projectors
// from the normal-equations formula, and norms from a Hermitian eigensolve.

#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "tpk/linalg.hpp"

namespace tpk::testing {

/// ||A|| as the square root of the top eigenvalue of A*A.
inline double oracle_norm(const CMatrix &a) {
  if (a.size() == 0) return 0.0;
  const CMatrix g = a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

/// Orthonormal basis for the column space via rank-revealing QR.
inline CMatrix oracle_range(const CMatrix &t, double tol = 1e-8) {
  if (t.cols() == 0) return CMatrix(t.rows(), 0);
  Eigen::ColPivHouseholderQR<CMatrix> qr(t);
  qr.setThreshold(tol);
  const Eigen::Index r = qr.rank();
  CMatrix q = qr.householderQ() * CMatrix::Identity(t.rows(), t.rows());
  return q.leftCols(r);
}

/// Projector onto the span of any full-column-rank basis: B (B*B)^-1 B*.
inline CMatrix oracle_projector(const CMatrix &basis) {
  if (basis.cols() == 0) return CMatrix::Zero(basis.rows(), basis.rows());
  const CMatrix gram = basis.adjoint() * basis;
  return basis * gram.ldlt().solve(basis.adjoint());
}

/// Basis of R(P) ∩ R(Q): vectors B_P a with B_P a = B_Q b, read off the null
/// space of [B_P, -B_Q].
inline CMatrix oracle_intersection(const CMatrix &p, const CMatrix &q,
                                   double tol = 1e-7) {
  const CMatrix bp = oracle_range(p);
  const CMatrix bq = oracle_range(q);
  const Eigen::Index d = p.rows();
  if (bp.cols() == 0 || bq.cols() == 0) return CMatrix(d, 0);
  CMatrix stacked(d, bp.cols() + bq.cols());
  stacked << bp, -bq;
  Eigen::JacobiSVD<CMatrix> svd(stacked, Eigen::ComputeFullV);
  const auto &sv = svd.singularValues();
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > tol) ++r;
  const CMatrix null = svd.matrixV().rightCols(stacked.cols() - r);
  if (null.cols() == 0) return CMatrix(d, 0);
  return oracle_range(bp * null.topRows(bp.cols()));
}

/// ||P_A - P_B|| for two bases (not necessarily orthonormal).
inline double oracle_subspace_distance(const CMatrix &a, const CMatrix &b) {
  return oracle_norm(oracle_projector(a) - oracle_projector(b));
}

/// The Friedrichs cosine c(M, N) = ||P_M P_N - P_{M∩N}||.
inline double oracle_friedrichs(const CMatrix &p, const CMatrix &q) {
  return oracle_norm(p * q - oracle_projector(oracle_intersection(p, q)));
}

/// Projector onto span((cos a, sin a)) in C^2.
inline CMatrix line_projector(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  CMatrix m(2, 2);
  m << c * c, c * s, c * s, s * s;
  return m;
}

inline CMatrix diag2(double a, double b) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

inline CMatrix block_diag(const CMatrix &a, const CMatrix &b) {
  CMatrix m = CMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

}  // namespace tpk::testing
