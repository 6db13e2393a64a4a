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

#include "tpk/friedrichs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tpk/error.hpp"

namespace tpk {

namespace {

double clamp_unit(double v, const char *what) {
  if (v > 1.0 + kNormClampTol) {
    throw Error(ErrorCode::kCertificateFailure,
                std::string(what) + " exceeds 1 by " + std::to_string(v - 1.0));
  }
  return std::clamp(v, 0.0, 1.0);
}

void require_same_ambient(const SubspaceBasis &m, const SubspaceBasis &n,
                          const char *what) {
  if (m.ambient_dim() != n.ambient_dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": ambient dimensions differ");
  }
}

}  // namespace

double friedrichs_c(const SubspaceBasis &m, const SubspaceBasis &n,
                    const RankPolicy &policy) {
  require_same_ambient(m, n, "friedrichs_c");
  const Projector pm = project_onto(m);
  const Projector pn = project_onto(n);
  const Projector meet = project_onto(intersect_ranges(pm, pn, policy));
  const CMatrix off_meet = identity(m.ambient_dim()) - meet.matrix();
  return clamp_unit(spectral_norm(pm.matrix() * pn.matrix() * off_meet),
                    "friedrichs_c");
}

double friedrichs_c_oracle(const SubspaceBasis &m, const SubspaceBasis &n,
                           const RankPolicy & /*policy*/) {
  require_same_ambient(m, n, "friedrichs_c_oracle");
  if (m.rank() == 0 || n.rank() == 0) return 0.0;
  const RVector cosines = singular_values(m.basis().adjoint() * n.basis());
  double best = 0.0;
  for (Eigen::Index i = 0; i < cosines.size(); ++i) {
    if (cosines(i) > 1.0 - kIntersectionCosineTol) continue;
    best = std::max(best, cosines(i));
  }
  return clamp_unit(best, "friedrichs_c_oracle");
}

double friedrichs_angle(double c) { return std::acos(std::clamp(c, 0.0, 1.0)); }

AngleReport verify_norm_equation(const Projector &p, const Projector &q,
                                 const RankPolicy &policy) {
  require_same_dim(p, q, "verify_norm_equation");
  const std::ptrdiff_t d = p.dim();
  const CMatrix id = identity(d);
  const Projector not_p = p.complement();
  const Projector not_q = q.complement();

  const SubspaceBasis meet = intersect_ranges(p, q, policy);
  const SubspaceBasis kernel_meet = intersect_ranges(not_p, not_q, policy);

  AngleReport r;
  r.intersection_rank = meet.rank();
  r.kernel_intersection_rank = kernel_meet.rank();
  r.lhs_norm = spectral_norm(p.matrix() * q.matrix() *
                             (id - project_onto(meet).matrix()));
  r.rhs_norm = spectral_norm(not_p.matrix() * not_q.matrix() *
                             (id - project_onto(kernel_meet).matrix()));

  const SubspaceBasis m = range_of(p);
  const SubspaceBasis n = range_of(q);
  r.c_value = friedrichs_c(m, n, policy);
  r.c_oracle = friedrichs_c_oracle(m, n, policy);
  r.c_complement = friedrichs_c(kernel_of(p), kernel_of(q), policy);
  r.duality_gap = std::abs(r.c_value - r.c_complement);
  return r;
}

bool PqPredicates::consistent() const {
  const bool contraction = norm_pq < 1.0 - kPredicateMargin;
  return contraction == trivial_intersection &&
         gap_norm < 1.0 - kPredicateMargin;
}

PqPredicates pq_norm_predicates(const Projector &p, const Projector &q,
                                const RankPolicy &policy) {
  require_same_dim(p, q, "pq_norm_predicates");
  const SubspaceBasis meet = intersect_ranges(p, q, policy);
  const CMatrix pq = p.matrix() * q.matrix();
  PqPredicates out;
  out.norm_pq = spectral_norm(pq);
  out.trivial_intersection = meet.rank() == 0;
  out.gap_norm = spectral_norm(pq - project_onto(meet).matrix());
  return out;
}

}  // namespace tpk
