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

#include "tpk/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tpk/error.hpp"

namespace tpk {

const char *error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNonOrthonormalBasis: return "NonOrthonormalBasis";
    case ErrorCode::kCertificateFailure: return "CertificateFailure";
    case ErrorCode::kInvalidForm: return "InvalidForm";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kNotPositive: return "NotPositive";
    case ErrorCode::kBadGrid: return "BadGrid";
    case ErrorCode::kGridMismatch: return "GridMismatch";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kUnknownSuite: return "UnknownSuite";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

double RankPolicy::cutoff(double sigma_max) const {
  return std::max(absolute_floor, relative_threshold * sigma_max);
}

std::ptrdiff_t RankPolicy::rank_of(const RVector &sv) const {
  if (sv.size() == 0) return 0;
  const double cut = cutoff(sv.maxCoeff());
  std::ptrdiff_t r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut) ++r;
  }
  return r;
}

bool is_finite(const CMatrix &a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

void require_finite(const CMatrix &a, const char *what) {
  if (!is_finite(a)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + ": matrix has non-finite entries");
  }
}

CMatrix adjoint(const CMatrix &a) { return a.adjoint(); }

CMatrix identity(std::ptrdiff_t d) { return CMatrix::Identity(d, d); }

RVector singular_values(const CMatrix &a) {
  if (a.size() == 0) return RVector(0);
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues();
}

double spectral_norm(const CMatrix &a) {
  if (a.size() == 0) return 0.0;
  return singular_values(a)(0);
}

CMatrix pinv(const CMatrix &t, const RankPolicy &policy) {
  if (t.size() == 0) return CMatrix::Zero(t.cols(), t.rows());
  Eigen::JacobiSVD<CMatrix> svd(t, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVector &sv = svd.singularValues();
  const std::ptrdiff_t r = policy.rank_of(sv);
  RVector inv = sv.head(r).cwiseInverse();
  return svd.matrixV().leftCols(r) * inv.cast<Complex>().asDiagonal() *
         svd.matrixU().leftCols(r).adjoint();
}

CMatrix range_basis(const CMatrix &t, const RankPolicy &policy) {
  if (t.size() == 0) return CMatrix(t.rows(), 0);
  Eigen::JacobiSVD<CMatrix> svd(t, Eigen::ComputeThinU);
  const std::ptrdiff_t r = policy.rank_of(svd.singularValues());
  return svd.matrixU().leftCols(r);
}

CMatrix null_basis(const CMatrix &t, const RankPolicy &policy) {
  if (t.cols() == 0) return CMatrix(0, 0);
  if (t.rows() == 0) return identity(t.cols());
  Eigen::JacobiSVD<CMatrix> svd(t, Eigen::ComputeFullV);
  const std::ptrdiff_t r = policy.rank_of(svd.singularValues());
  return svd.matrixV().rightCols(t.cols() - r);
}

CMatrix hermitian_part(const CMatrix &a) {
  return (a + a.adjoint()) * 0.5;
}

HermitianEigen hermitian_eigen(const CMatrix &h) {
  if (h.size() == 0) return {RVector(0), CMatrix(0, 0)};
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(h));
  return {es.eigenvalues(), es.eigenvectors()};
}

RVector hermitian_eigenvalues(const CMatrix &h) {
  if (h.size() == 0) return RVector(0);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(h),
                                            Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

CMatrix psd_sqrt(const CMatrix &h) {
  return hermitian_function(
      h, [](double x) { return std::sqrt(x); }, 0.0,
      std::numeric_limits<double>::infinity());
}

double subspace_gap(const CMatrix &a, const CMatrix &b) {
  return spectral_norm(a * a.adjoint() - b * b.adjoint());
}

double orthonormality_residual(const CMatrix &basis) {
  if (basis.cols() == 0) return 0.0;
  return spectral_norm(basis.adjoint() * basis - identity(basis.cols()));
}

}  // namespace tpk
