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

#include <array>
#include <cstddef>
#include <utility>

#include "tpk/linalg.hpp"

namespace tpk {

/// Orthonormality tolerance at which a candidate basis is rejected.
inline constexpr double kBasisRejectTol = 1e-8;
/// Projector certificate tolerance; residuals above it (but below
/// kProjectorRepairTol) trigger a repair.
inline constexpr double kProjectorTol = 1e-10;
inline constexpr double kProjectorRepairTol = 1e-8;

/// A closed subspace held as a matrix with orthonormal columns. Rank 0 is a
/// valid, first-class value.
class SubspaceBasis {
 public:
  SubspaceBasis() = default;
  /// Throws NonOrthonormalBasis if ||B*B - I|| > kBasisRejectTol.
  explicit SubspaceBasis(CMatrix basis);

  static SubspaceBasis empty(std::ptrdiff_t ambient_dim);
  static SubspaceBasis whole(std::ptrdiff_t ambient_dim);

  const CMatrix &basis() const { return basis_; }
  std::ptrdiff_t ambient_dim() const { return basis_.rows(); }
  std::ptrdiff_t rank() const { return basis_.cols(); }
  double orthonormality_residual() const;

 private:
  CMatrix basis_;
};

struct ProjectorCertificate {
  double hermitian_residual = 0.0;   // ||P - P*||
  double idempotent_residual = 0.0;  // ||P^2 - P||
  bool repaired = false;
};

/// Hermitian idempotent with a residual witness. Eigenvalues lie within
/// ~sqrt of the residuals of {0, 1}, so the spectral invariant follows from
/// the two recorded residuals.
class Projector {
 public:
  Projector() = default;

  /// Certifies `m` at kProjectorTol. Between kProjectorTol and
  /// kProjectorRepairTol the matrix is re-symmetrized and spectrally rounded,
  /// and the certificate records `repaired`. Beyond that: CertificateFailure.
  static Projector certify(const CMatrix &m);
  /// Symmetrize and snap eigenvalues to {0, 1} at threshold 1/2.
  static Projector round(const CMatrix &m);
  static Projector zero(std::ptrdiff_t d);
  static Projector identity(std::ptrdiff_t d);

  const CMatrix &matrix() const { return matrix_; }
  std::ptrdiff_t dim() const { return matrix_.rows(); }
  const ProjectorCertificate &certificate() const { return cert_; }
  /// Rank, read off the trace.
  std::ptrdiff_t rank() const;
  /// I - P.
  Projector complement() const;

 private:
  Projector(CMatrix m, ProjectorCertificate cert)
      : matrix_(std::move(m)), cert_(cert) {}

  CMatrix matrix_;
  ProjectorCertificate cert_;
};

ProjectorCertificate measure_certificate(const CMatrix &m);

/// B B*.
Projector project_onto(const SubspaceBasis &b);

/// Orthonormal basis of R(P) (resp. N(P)) from the spectral split at 1/2.
SubspaceBasis range_of(const Projector &p);
SubspaceBasis kernel_of(const Projector &p);

/// Range/kernel bases of a Hermitian positive semidefinite matrix, with the
/// rank decided by `policy` on its eigenvalues. Range columns are ordered by
/// descending eigenvalue.
CMatrix hermitian_range_basis(const CMatrix &h, const RankPolicy &policy);
CMatrix hermitian_null_basis(const CMatrix &h, const RankPolicy &policy);

/// Gap ||P_A - P_B|| between two subspaces.
double gap(const SubspaceBasis &a, const SubspaceBasis &b);
double gap(const Projector &a, const Projector &b);

/// Closure of R(P) + R(Q), computed as the range of P + Q.
SubspaceBasis range_sum(const Projector &p, const Projector &q,
                        const RankPolicy &policy = {});

/// R(P) ∩ R(Q), computed as the kernel of 2I - P - Q (the eigenvalue-2
/// eigenspace of P + Q).
SubspaceBasis intersect_ranges(const Projector &p, const Projector &q,
                               const RankPolicy &policy = {});

/// The six canonical subspaces of a pair of projections:
///   H1 = R(P)∩R(Q), H2 = R(P)∩N(Q), H3 = N(P)∩R(Q), H4 = N(P)∩N(Q),
///   H5 = R(P - P1 - P2), H6 = R(I - P - P3 - P4).
/// Index i of the arrays holds H_{i+1}.
struct SixSpaceDecomposition {
  std::array<SubspaceBasis, 6> spaces;
  std::array<Projector, 6> projectors;

  std::array<std::ptrdiff_t, 6> ranks() const;
  std::ptrdiff_t dim() const { return spaces[0].ambient_dim(); }
};

SixSpaceDecomposition six_space_decomposition(const Projector &p,
                                              const Projector &q,
                                              const RankPolicy &policy = {});

/// Projection onto the closure of R(QP), as Q - P_{R(Q)∩N(P)}.
Projector projection_onto_range_qp(const Projector &p, const Projector &q,
                                   const RankPolicy &policy = {});

/// (closure of R(QP(I-Q)), R(P)∩R(Q)); together an orthogonal split of the
/// closure of R(QP).
std::pair<SubspaceBasis, SubspaceBasis> range_qp_orthogonal_split(
    const Projector &p, const Projector &q, const RankPolicy &policy = {});

/// Ranks of the four closures R(P+Q), R(P+I-Q), R(I-P+Q), R(2I-P-Q). Two
/// projections are harmonious when all four are orthogonally complemented,
/// which every subspace of a finite-dimensional space is; the ranks are the
/// only finite-dimensional content.
struct HarmoniousRanks {
  std::array<std::ptrdiff_t, 4> ranks{};
  bool harmonious = true;
};
HarmoniousRanks harmonious_ranks(const Projector &p, const Projector &q,
                                 const RankPolicy &policy = {});

void require_same_dim(const Projector &p, const Projector &q,
                      const char *what);

}  // namespace tpk
