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

#include "tpk/halmos.hpp"

#include <cmath>
#include <string>

#include "tpk/error.hpp"

namespace tpk {

namespace {

constexpr double kUnitaryTol = 1e-9;

double unitarity_residual(const CMatrix &u) {
  if (u.size() == 0) return 0.0;
  return spectral_norm(u.adjoint() * u - identity(u.cols()));
}

}  // namespace

CMatrix polar_partial_isometry(const CMatrix &t, const RankPolicy &policy) {
  if (t.size() == 0) return CMatrix::Zero(t.rows(), t.cols());
  Eigen::JacobiSVD<CMatrix> svd(t, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const std::ptrdiff_t r = policy.rank_of(svd.singularValues());
  return svd.matrixU().leftCols(r) * svd.matrixV().leftCols(r).adjoint();
}

CMatrix generic_block(const CMatrix &q0, const CMatrix &u0) {
  const std::ptrdiff_t r = q0.rows();
  const CMatrix id = identity(r);
  const CMatrix cross = hermitian_function(
      q0, [](double x) { return std::sqrt(x * (1.0 - x)); }, 0.0, 1.0);
  CMatrix t(2 * r, 2 * r);
  t.topLeftCorner(r, r) = hermitian_part(q0);
  t.topRightCorner(r, r) = cross * u0;
  t.bottomLeftCorner(r, r) = u0.adjoint() * cross;
  t.bottomRightCorner(r, r) = u0.adjoint() * (id - hermitian_part(q0)) * u0;
  return t;
}

HalmosForm halmos_decompose(const Projector &p, const Projector &q,
                            const RankPolicy &policy) {
  require_same_dim(p, q, "halmos_decompose");
  HalmosForm form;
  form.decomposition = six_space_decomposition(p, q, policy);
  const auto &spaces = form.decomposition.spaces;
  const std::ptrdiff_t d = p.dim();

  form.u_pq.resize(d, d);
  std::ptrdiff_t row = 0;
  for (const SubspaceBasis &s : spaces) {
    if (row + s.rank() > d) break;
    form.u_pq.middleRows(row, s.rank()) = s.basis().adjoint();
    row += s.rank();
  }
  if (row != d || unitarity_residual(form.u_pq) > kUnitaryTol) {
    throw Error(ErrorCode::kCertificateFailure,
                "the six subspaces do not form an orthogonal decomposition");
  }

  const CMatrix &b5 = spaces[4].basis();
  const CMatrix &b6 = spaces[5].basis();
  if (b5.cols() == 0) {
    form.degenerate_generic_part = true;
    form.q0.resize(0, 0);
    form.u0.resize(0, 0);
    return form;
  }

  form.q0 = hermitian_part(b5.adjoint() * q.matrix() * b5);
  const RVector spectrum = hermitian_eigenvalues(form.q0);
  if (spectrum.minCoeff() <= kGenericMargin ||
      spectrum.maxCoeff() >= 1.0 - kGenericMargin) {
    throw Error(ErrorCode::kCertificateFailure,
                "Q0 has an eigenvalue within 1e-9 of 0 or 1 (range [" +
                    std::to_string(spectrum.minCoeff()) + ", " +
                    std::to_string(spectrum.maxCoeff()) +
                    "]); an intersection direction was misclassified");
  }

  // U0 is the polar factor of the off-diagonal block P5 Q P6 restricted to
  // H6 -> H5, which equals Q0^½ (I - Q0)^½ U0 with an invertible left factor.
  form.u0 = polar_partial_isometry(b5.adjoint() * q.matrix() * b6, policy);
  if (form.u0.cols() != form.u0.rows() ||
      unitarity_residual(form.u0) > kUnitaryTol) {
    throw Error(ErrorCode::kCertificateFailure, "U0 is not unitary");
  }
  return form;
}

void validate_form(const HalmosForm &form) {
  const auto fail = [](const std::string &msg) {
    throw Error(ErrorCode::kInvalidForm, "invalid Halmos form: " + msg);
  };
  const std::ptrdiff_t d = form.u_pq.rows();
  if (form.u_pq.cols() != d) fail("u_pq is not square");
  if (!is_finite(form.u_pq) || !is_finite(form.q0) || !is_finite(form.u0)) {
    fail("non-finite entries");
  }
  if (unitarity_residual(form.u_pq) > kUnitaryTol) fail("u_pq is not unitary");
  const auto r = form.decomposition.ranks();
  std::ptrdiff_t total = 0;
  for (const auto ri : r) total += ri;
  if (total != d) fail("subspace ranks do not sum to the dimension");
  if (form.q0.rows() != r[4] || form.q0.cols() != r[4]) fail("q0 shape");
  if (form.u0.rows() != r[4] || form.u0.cols() != r[5]) fail("u0 shape");
  if (r[4] != r[5]) fail("H5 and H6 ranks differ");
  if (r[4] == 0) return;
  if (spectral_norm(form.q0 - form.q0.adjoint()) > kUnitaryTol) {
    fail("q0 is not Hermitian");
  }
  const RVector spectrum = hermitian_eigenvalues(form.q0);
  if (spectrum.minCoeff() <= kGenericMargin ||
      spectrum.maxCoeff() >= 1.0 - kGenericMargin) {
    fail("q0 spectrum leaves (0, 1)");
  }
  if (unitarity_residual(form.u0) > kUnitaryTol) fail("u0 is not unitary");
}

std::pair<Projector, Projector> reconstruct(const HalmosForm &form) {
  validate_form(form);
  const auto r = form.decomposition.ranks();
  const std::ptrdiff_t d = form.dim();
  RVector p_diag(d), q_diag(d);
  std::ptrdiff_t at = 0;
  const double p_pattern[4] = {1, 1, 0, 0};
  const double q_pattern[4] = {1, 0, 1, 0};
  for (int i = 0; i < 4; ++i) {
    p_diag.segment(at, r[i]).setConstant(p_pattern[i]);
    q_diag.segment(at, r[i]).setConstant(q_pattern[i]);
    at += r[i];
  }
  p_diag.segment(at, r[4]).setOnes();
  p_diag.segment(at + r[4], r[5]).setZero();
  q_diag.segment(at, r[4] + r[5]).setZero();

  CMatrix p_block = p_diag.cast<Complex>().asDiagonal();
  CMatrix q_block = q_diag.cast<Complex>().asDiagonal();
  if (r[4] > 0) {
    q_block.block(at, at, 2 * r[4], 2 * r[4]) = generic_block(form.q0, form.u0);
  }
  const CMatrix &u = form.u_pq;
  return {Projector::certify(u.adjoint() * p_block * u),
          Projector::certify(u.adjoint() * q_block * u)};
}

CMatrix build_intertwiner(const HalmosForm &form) {
  validate_form(form);
  const auto r = form.decomposition.ranks();
  const std::ptrdiff_t d = form.dim();
  const std::ptrdiff_t head = r[0] + r[1] + r[2] + r[3];
  const std::ptrdiff_t g = r[4];
  CMatrix block = CMatrix::Zero(d, d);
  block.topLeftCorner(head, head).setIdentity();
  block.block(head, head + g, g, g) = form.u0;
  block.block(head + g, head, g, g) = -form.u0.adjoint();
  return form.u_pq.adjoint() * block * form.u_pq;
}

}  // namespace tpk
