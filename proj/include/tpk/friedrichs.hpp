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

#include "tpk/subspaces.hpp"

namespace tpk {

/// Principal-angle cosines above 1 - kIntersectionCosineTol are treated as
/// intersection directions by the oracle.
inline constexpr double kIntersectionCosineTol = 1e-8;
/// Norms within this distance above 1 are clamped to 1; larger excursions
/// are certificate failures.
inline constexpr double kNormClampTol = 1e-12;
/// Strict-inequality margin for ||PQ|| < 1 style predicates.
inline constexpr double kPredicateMargin = 1e-9;

/// c(M, N) = ||P_M P_N (I - P_{M∩N})||.
double friedrichs_c(const SubspaceBasis &m, const SubspaceBasis &n,
                    const RankPolicy &policy = {});

/// Independent route: largest principal-angle cosine (singular value of
/// B_M* B_N) that is not an intersection direction, or 0.
double friedrichs_c_oracle(const SubspaceBasis &m, const SubspaceBasis &n,
                           const RankPolicy &policy = {});

/// Friedrichs angle in [0, pi/2] from its cosine.
double friedrichs_angle(double c);

struct AngleReport {
  double c_value = 0.0;
  double c_oracle = 0.0;
  double c_complement = 0.0;  // c(M⊥, N⊥)
  double lhs_norm = 0.0;      // ||PQ (I - P_{R(P)∩R(Q)})||
  double rhs_norm = 0.0;      // ||(I-P)(I-Q)(I - P_{N(P)∩N(Q)})||
  double duality_gap = 0.0;   // |c(M,N) - c(M⊥,N⊥)|
  std::ptrdiff_t intersection_rank = 0;
  std::ptrdiff_t kernel_intersection_rank = 0;

  double angle() const { return friedrichs_angle(c_value); }
};

/// Evaluates both sides of the norm identity, c by both routes, and the
/// complement duality gap.
AngleReport verify_norm_equation(const Projector &p, const Projector &q,
                                 const RankPolicy &policy = {});

struct PqPredicates {
  double norm_pq = 0.0;              // ||PQ||
  bool trivial_intersection = true;  // R(P)∩R(Q) = {0}
  double gap_norm = 0.0;             // ||PQ - P_{R(P)∩R(Q)}||

  /// (||PQ|| < 1 - margin) <=> trivial intersection, and the gap norm is
  /// below 1 - margin (ranges are closed in finite dimension).
  bool consistent() const;
};

PqPredicates pq_norm_predicates(const Projector &p, const Projector &q,
                                const RankPolicy &policy = {});

}  // namespace tpk
