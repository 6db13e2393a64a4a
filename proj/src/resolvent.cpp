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

#include "tpk/resolvent.hpp"

#include <cmath>
#include <string>

namespace tpk {

namespace {

void require_positive_n(std::int64_t n) {
  if (n < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "resolvent index n must be >= 1, got " + std::to_string(n));
  }
}

// (H + I/n)^-1 for Hermitian positive semidefinite H.
CMatrix shifted_inverse(const CMatrix &h, std::int64_t n) {
  const std::ptrdiff_t d = h.rows();
  const CMatrix shifted = hermitian_part(h) + identity(d) / static_cast<double>(n);
  Eigen::LLT<CMatrix> llt(shifted);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kNotPositive,
                "shifted matrix is not positive definite");
  }
  return hermitian_part(llt.solve(identity(d)));
}

}  // namespace

NoConvergence::NoConvergence(ResolventTrace trace)
    : Error(ErrorCode::kNoConvergence,
            "resolvent iteration did not meet its stopping rule by n = " +
                std::to_string(trace.steps.empty() ? 0 : trace.steps.back().n)),
      trace_(std::move(trace)) {}

std::vector<std::int64_t> geometric_schedule(std::int64_t n_max) {
  require_positive_n(n_max);
  std::vector<std::int64_t> out{1};
  while (out.back() < n_max) out.push_back(out.back() * 2);
  return out;
}

CMatrix resolvent_tn(const Projector &p, const Projector &q, std::int64_t n) {
  require_same_dim(p, q, "resolvent_tn");
  require_positive_n(n);
  return shifted_inverse(p.matrix() + q.matrix(), n);
}

AbcSequences abc_sequences(const Projector &p, const Projector &q,
                           std::int64_t n) {
  const CMatrix t = resolvent_tn(p, q, n);
  const CMatrix &pm = p.matrix();
  const CMatrix &qm = q.matrix();
  return {pm - pm * t * pm, pm * t * qm, qm - qm * t * qm};
}

AngleOperators angle_operators(const Projector &p, const Projector &q,
                               std::int64_t n) {
  require_same_dim(p, q, "angle_operators");
  require_positive_n(n);
  const CMatrix &pm = p.matrix();
  const CMatrix &qm = q.matrix();
  const CMatrix id = identity(p.dim());
  const CMatrix gap_sum = 2.0 * id - pm - qm;
  const CMatrix sum = pm + qm;
  return {pm * qm * gap_sum * shifted_inverse(gap_sum, n),
          (id - pm) * (id - qm) * sum * shifted_inverse(sum, n)};
}

ResolventTrace intersection_projector_iterative(const Projector &p,
                                                const Projector &q, double tol,
                                                std::int64_t n_max,
                                                const RankPolicy &policy) {
  require_same_dim(p, q, "intersection_projector_iterative");
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tol must be positive");
  }
  const CMatrix oracle = project_onto(intersect_ranges(p, q, policy)).matrix();

  ResolventTrace trace;
  CMatrix previous;
  for (const std::int64_t n : geometric_schedule(n_max)) {
    const AbcSequences abc = abc_sequences(p, q, n);
    const CMatrix two_b = 2.0 * abc.b;
    const Projector rounded = Projector::round(two_b);

    ResolventStep step;
    step.n = n;
    step.err_to_oracle = spectral_norm(two_b - oracle);
    step.diff_ab = spectral_norm(abc.a - abc.b);
    step.diff_bc = spectral_norm(abc.b - abc.c);
    step.norm_b = spectral_norm(abc.b);
    step.step_diff = previous.size() == 0 ? 0.0 : spectral_norm(two_b - previous);
    step.rounding_residual =
        spectral_norm(rounded.matrix() - hermitian_part(two_b));
    trace.steps.push_back(step);
    trace.final_projector = rounded;

    if (previous.size() != 0 && step.step_diff < tol / 2 &&
        step.rounding_residual < tol) {
      trace.converged = true;
      break;
    }
    previous = two_b;
  }

  std::size_t from = trace.steps.size() - 1;
  while (from > 0 && trace.steps[from].err_to_oracle <=
                         trace.steps[from - 1].err_to_oracle + 1e-12) {
    --from;
  }
  trace.monotone_from = from;

  if (!trace.converged) throw NoConvergence(std::move(trace));
  return trace;
}

StrictLimitCheck strict_limit_norm_check(const CMatrix &s, const CMatrix &t,
                                         std::int64_t n_max,
                                         const RankPolicy &policy) {
  if (t.rows() != t.cols() || s.cols() != t.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "strict_limit_norm_check: S and T shapes are incompatible");
  }
  require_finite(s, "strict_limit_norm_check");
  require_finite(t, "strict_limit_norm_check");
  const double scale = std::max(1.0, spectral_norm(t));
  if (spectral_norm(t - t.adjoint()) > 1e-10 * scale) {
    throw Error(ErrorCode::kNotPositive, "T is not Hermitian");
  }
  const HermitianEigen e = hermitian_eigen(t);
  if (e.values.size() > 0 && e.values.minCoeff() < -1e-10 * scale) {
    throw Error(ErrorCode::kNotPositive,
                "T has a negative eigenvalue " +
                    std::to_string(e.values.minCoeff()));
  }

  const CMatrix range = hermitian_range_basis(t, policy);
  StrictLimitCheck out;
  out.target = spectral_norm(s * range * range.adjoint());
  out.schedule = geometric_schedule(n_max);
  for (const std::int64_t n : out.schedule) {
    // T_n = (T + I/n)^-1 T through the spectral calculus of T.
    const double inv_n = 1.0 / static_cast<double>(n);
    RVector weights(e.values.size());
    for (Eigen::Index i = 0; i < e.values.size(); ++i) {
      const double mu = std::max(0.0, e.values(i));
      weights(i) = mu / (mu + inv_n);
    }
    const CMatrix tn =
        e.vectors * weights.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    const double norm = spectral_norm(s * tn);
    if (!out.norms.empty() && norm < out.norms.back() - 1e-12) {
      out.monotone = false;
    }
    out.norms.push_back(norm);
  }
  out.limit_estimate = out.norms.back();
  return out;
}

}  // namespace tpk
