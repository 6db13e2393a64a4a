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

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>

namespace tpk {

using Complex = std::complex<double>;

/// Dense complex matrix; the carrier of every operator and basis in tpk.
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Numerical-rank rule shared by every module. A singular value s counts
/// toward rank iff s > max(absolute_floor, relative_threshold * s_max).
struct RankPolicy {
  double relative_threshold = 1e-10;
  double absolute_floor = 1e-14;

  double cutoff(double sigma_max) const;
  std::ptrdiff_t rank_of(const RVector &descending_singular_values) const;
};

/// Throws kInvalidArgument if any entry is NaN or infinite.
void require_finite(const CMatrix &a, const char *what);
bool is_finite(const CMatrix &a);

CMatrix adjoint(const CMatrix &a);
CMatrix identity(std::ptrdiff_t d);

/// Largest singular value. Zero for empty matrices.
double spectral_norm(const CMatrix &a);

/// Singular values in descending order.
RVector singular_values(const CMatrix &a);

/// Moore-Penrose inverse with rank decided by `policy`.
CMatrix pinv(const CMatrix &t, const RankPolicy &policy = {});

/// Orthonormal columns spanning the column space of t (rows(t) x rank).
CMatrix range_basis(const CMatrix &t, const RankPolicy &policy = {});
/// Orthonormal columns spanning the kernel of t (cols(t) x (cols - rank)).
CMatrix null_basis(const CMatrix &t, const RankPolicy &policy = {});

/// (A + A*) / 2.
CMatrix hermitian_part(const CMatrix &a);

/// Eigen-decomposition of the Hermitian part of h; eigenvalues ascending.
struct HermitianEigen {
  RVector values;
  CMatrix vectors;
};
HermitianEigen hermitian_eigen(const CMatrix &h);
RVector hermitian_eigenvalues(const CMatrix &h);

/// f(H) for Hermitian H, with eigenvalues clamped to [lo, hi] first.
template <class Fn>
CMatrix hermitian_function(const CMatrix &h, Fn &&fn, double lo, double hi) {
  const HermitianEigen e = hermitian_eigen(h);
  RVector mapped(e.values.size());
  for (Eigen::Index i = 0; i < e.values.size(); ++i) {
    mapped(i) = fn(std::min(hi, std::max(lo, e.values(i))));
  }
  return e.vectors * mapped.cast<Complex>().asDiagonal() * e.vectors.adjoint();
}

/// Principal square root of a Hermitian positive semidefinite matrix;
/// negative rounding noise is clamped to zero.
CMatrix psd_sqrt(const CMatrix &h);

/// Gap metric between two column spaces: ||P_A - P_B||, with the bases
/// assumed orthonormal.
double subspace_gap(const CMatrix &basis_a, const CMatrix &basis_b);

/// ||B* B - I||.
double orthonormality_residual(const CMatrix &basis);

}  // namespace tpk
