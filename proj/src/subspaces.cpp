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

#include "tpk/subspaces.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "tpk/error.hpp"

namespace tpk {

SubspaceBasis::SubspaceBasis(CMatrix basis) : basis_(std::move(basis)) {
  require_finite(basis_, "SubspaceBasis");
  const double r = tpk::orthonormality_residual(basis_);
  if (r > kBasisRejectTol) {
    throw Error(ErrorCode::kNonOrthonormalBasis,
                "basis columns are not orthonormal (||B*B - I|| = " +
                    std::to_string(r) + ")");
  }
}

SubspaceBasis SubspaceBasis::empty(std::ptrdiff_t ambient_dim) {
  return SubspaceBasis(CMatrix(ambient_dim, 0));
}

SubspaceBasis SubspaceBasis::whole(std::ptrdiff_t ambient_dim) {
  return SubspaceBasis(tpk::identity(ambient_dim));
}

double SubspaceBasis::orthonormality_residual() const {
  return tpk::orthonormality_residual(basis_);
}

ProjectorCertificate measure_certificate(const CMatrix &m) {
  ProjectorCertificate c;
  c.hermitian_residual = spectral_norm(m - m.adjoint());
  c.idempotent_residual = spectral_norm(m * m - m);
  return c;
}

Projector Projector::round(const CMatrix &m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "projector must be square");
  }
  require_finite(m, "Projector::round");
  const HermitianEigen e = hermitian_eigen(m);
  std::ptrdiff_t first = 0;
  while (first < e.values.size() && e.values(first) <= 0.5) ++first;
  const CMatrix v = e.vectors.rightCols(e.values.size() - first);
  CMatrix p = v * v.adjoint();
  const ProjectorCertificate cert = measure_certificate(p);
  return Projector(std::move(p), cert);
}

Projector Projector::certify(const CMatrix &m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "projector must be square");
  }
  require_finite(m, "Projector::certify");
  const ProjectorCertificate cert = measure_certificate(m);
  const double worst = std::max(cert.hermitian_residual, cert.idempotent_residual);
  if (worst <= kProjectorTol) return Projector(m, cert);
  if (worst <= kProjectorRepairTol) {
    Projector fixed = round(m);
    fixed.cert_.repaired = true;
    return fixed;
  }
  throw Error(ErrorCode::kCertificateFailure,
              "matrix is not an orthogonal projection (hermitian residual " +
                  std::to_string(cert.hermitian_residual) +
                  ", idempotent residual " +
                  std::to_string(cert.idempotent_residual) + ")");
}

Projector Projector::zero(std::ptrdiff_t d) {
  return Projector(CMatrix::Zero(d, d), {});
}

Projector Projector::identity(std::ptrdiff_t d) {
  return Projector(tpk::identity(d), {});
}

std::ptrdiff_t Projector::rank() const {
  return static_cast<std::ptrdiff_t>(std::llround(matrix_.trace().real()));
}

Projector Projector::complement() const {
  CMatrix c = tpk::identity(dim()) - matrix_;
  const ProjectorCertificate cert = measure_certificate(c);
  return Projector(std::move(c), {cert.hermitian_residual,
                                  cert.idempotent_residual, cert_.repaired});
}

Projector project_onto(const SubspaceBasis &b) {
  return Projector::certify(b.basis() * b.basis().adjoint());
}

SubspaceBasis range_of(const Projector &p) {
  const HermitianEigen e = hermitian_eigen(p.matrix());
  std::ptrdiff_t first = 0;
  while (first < e.values.size() && e.values(first) <= 0.5) ++first;
  // Descending eigenvalue order.
  return SubspaceBasis(e.vectors.rightCols(e.values.size() - first).rowwise().reverse());
}

SubspaceBasis kernel_of(const Projector &p) {
  const HermitianEigen e = hermitian_eigen(p.matrix());
  std::ptrdiff_t count = 0;
  while (count < e.values.size() && e.values(count) <= 0.5) ++count;
  return SubspaceBasis(e.vectors.leftCols(count));
}

namespace {

// Columns of the eigenvector matrix selected by |lambda| against the policy
// cutoff; `keep_range` picks the range side.
CMatrix hermitian_split(const CMatrix &h, const RankPolicy &policy,
                        bool keep_range) {
  const std::ptrdiff_t d = h.rows();
  if (d == 0) return CMatrix(0, 0);
  const HermitianEigen e = hermitian_eigen(h);
  const double top = e.values.cwiseAbs().maxCoeff();
  const double cut = policy.cutoff(top);
  std::vector<Eigen::Index> picked;
  for (Eigen::Index i = 0; i < e.values.size(); ++i) {
    if ((std::abs(e.values(i)) > cut) == keep_range) picked.push_back(i);
  }
  if (keep_range) {
    std::stable_sort(picked.begin(), picked.end(),
                     [&](Eigen::Index a, Eigen::Index b) {
                       return e.values(a) > e.values(b);
                     });
  }
  CMatrix out(d, static_cast<Eigen::Index>(picked.size()));
  for (std::size_t k = 0; k < picked.size(); ++k) {
    out.col(static_cast<Eigen::Index>(k)) = e.vectors.col(picked[k]);
  }
  return out;
}

}  // namespace

CMatrix hermitian_range_basis(const CMatrix &h, const RankPolicy &policy) {
  return hermitian_split(h, policy, true);
}

CMatrix hermitian_null_basis(const CMatrix &h, const RankPolicy &policy) {
  return hermitian_split(h, policy, false);
}

double gap(const SubspaceBasis &a, const SubspaceBasis &b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "gap: ambient dimensions differ");
  }
  return subspace_gap(a.basis(), b.basis());
}

double gap(const Projector &a, const Projector &b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "gap: dimensions differ");
  }
  return spectral_norm(a.matrix() - b.matrix());
}

void require_same_dim(const Projector &p, const Projector &q, const char *what) {
  if (p.dim() != q.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": projector dimensions differ (" +
                    std::to_string(p.dim()) + " vs " + std::to_string(q.dim()) +
                    ")");
  }
}

SubspaceBasis range_sum(const Projector &p, const Projector &q,
                        const RankPolicy &policy) {
  require_same_dim(p, q, "range_sum");
  return SubspaceBasis(hermitian_range_basis(p.matrix() + q.matrix(), policy));
}

SubspaceBasis intersect_ranges(const Projector &p, const Projector &q,
                               const RankPolicy &policy) {
  require_same_dim(p, q, "intersect_ranges");
  const CMatrix two_minus =
      2.0 * tpk::identity(p.dim()) - p.matrix() - q.matrix();
  return SubspaceBasis(hermitian_null_basis(two_minus, policy));
}

std::array<std::ptrdiff_t, 6> SixSpaceDecomposition::ranks() const {
  std::array<std::ptrdiff_t, 6> r{};
  for (std::size_t i = 0; i < 6; ++i) r[i] = spaces[i].rank();
  return r;
}

SixSpaceDecomposition six_space_decomposition(const Projector &p,
                                              const Projector &q,
                                              const RankPolicy &policy) {
  require_same_dim(p, q, "six_space_decomposition");
  const Projector not_p = p.complement();
  const Projector not_q = q.complement();

  SixSpaceDecomposition out;
  out.spaces[0] = intersect_ranges(p, q, policy);
  out.spaces[1] = intersect_ranges(p, not_q, policy);
  out.spaces[2] = intersect_ranges(not_p, q, policy);
  out.spaces[3] = intersect_ranges(not_p, not_q, policy);
  for (std::size_t i = 0; i < 4; ++i) {
    out.projectors[i] = project_onto(out.spaces[i]);
  }
  out.projectors[4] = Projector::certify(p.matrix() - out.projectors[0].matrix() -
                                         out.projectors[1].matrix());
  out.projectors[5] = Projector::certify(
      not_p.matrix() - out.projectors[2].matrix() - out.projectors[3].matrix());
  out.spaces[4] = range_of(out.projectors[4]);
  out.spaces[5] = range_of(out.projectors[5]);
  if (out.spaces[4].rank() != out.spaces[5].rank()) {
    throw Error(ErrorCode::kCertificateFailure,
                "generic parts H5 and H6 have different ranks (" +
                    std::to_string(out.spaces[4].rank()) + " vs " +
                    std::to_string(out.spaces[5].rank()) +
                    "); the rank policy misclassified a direction");
  }
  return out;
}

Projector projection_onto_range_qp(const Projector &p, const Projector &q,
                                   const RankPolicy &policy) {
  require_same_dim(p, q, "projection_onto_range_qp");
  const SubspaceBasis q_and_not_p = intersect_ranges(q, p.complement(), policy);
  return Projector::certify(q.matrix() - project_onto(q_and_not_p).matrix());
}

std::pair<SubspaceBasis, SubspaceBasis> range_qp_orthogonal_split(
    const Projector &p, const Projector &q, const RankPolicy &policy) {
  require_same_dim(p, q, "range_qp_orthogonal_split");
  const CMatrix &pm = p.matrix();
  const CMatrix &qm = q.matrix();
  const CMatrix qp_not_q = qm * pm * (tpk::identity(p.dim()) - qm);
  return {SubspaceBasis(range_basis(qp_not_q, policy)),
          intersect_ranges(p, q, policy)};
}

HarmoniousRanks harmonious_ranks(const Projector &p, const Projector &q,
                                 const RankPolicy &policy) {
  require_same_dim(p, q, "harmonious_ranks");
  const CMatrix &pm = p.matrix();
  const CMatrix &qm = q.matrix();
  const CMatrix id = tpk::identity(p.dim());
  HarmoniousRanks out;
  out.ranks[0] = hermitian_range_basis(pm + qm, policy).cols();
  out.ranks[1] = hermitian_range_basis(pm + id - qm, policy).cols();
  out.ranks[2] = hermitian_range_basis(id - pm + qm, policy).cols();
  out.ranks[3] = hermitian_range_basis(2.0 * id - pm - qm, policy).cols();
  return out;
}

}  // namespace tpk
