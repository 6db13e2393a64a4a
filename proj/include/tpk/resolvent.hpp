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

#include <cstdint>
#include <vector>

#include "tpk/error.hpp"
#include "tpk/subspaces.hpp"

namespace tpk {

inline constexpr std::int64_t kDefaultNMax = std::int64_t{1} << 20;
inline constexpr double kDefaultResolventTol = 1e-3;

/// T_n = (P + Q + I/n)^-1, via a Cholesky factorization.
CMatrix resolvent_tn(const Projector &p, const Projector &q, std::int64_t n);

/// A_n = P - P T_n P, B_n = P T_n Q, C_n = Q - Q T_n Q.
struct AbcSequences {
  CMatrix a;
  CMatrix b;
  CMatrix c;
};
AbcSequences abc_sequences(const Projector &p, const Projector &q,
                           std::int64_t n);

/// The pair conjugated by the Halmos intertwiner, in original coordinates:
///   first  = PQ (2I-P-Q) (2I-P-Q+I/n)^-1
///   second = (I-P)(I-Q) (P+Q) (P+Q+I/n)^-1
struct AngleOperators {
  CMatrix first;
  CMatrix second;
};
AngleOperators angle_operators(const Projector &p, const Projector &q,
                               std::int64_t n);

struct ResolventStep {
  std::int64_t n = 0;
  double err_to_oracle = 0.0;  // ||2B_n - P_{R(P)∩R(Q)}||
  double diff_ab = 0.0;        // ||A_n - B_n||
  double diff_bc = 0.0;        // ||B_n - C_n||
  double norm_b = 0.0;         // ||B_n||
  double step_diff = 0.0;      // ||2B_n - 2B_{n/2}||, 0 for the first step
  double rounding_residual = 0.0;  // ||round(2B_n) - herm(2B_n)||
};

struct ResolventTrace {
  std::vector<ResolventStep> steps;
  bool converged = false;
  Projector final_projector;
  /// Index of the first step after which err_to_oracle never increases
  /// (beyond 1e-12).
  std::size_t monotone_from = 0;
};

class NoConvergence : public Error {
 public:
  explicit NoConvergence(ResolventTrace trace);
  const ResolventTrace &trace() const { return trace_; }

 private:
  ResolventTrace trace_;
};

/// Runs n = 1, 2, 4, ... up to the first power of two >= n_max, stopping once
/// ||2B_n - 2B_{n/2}|| < tol/2 and herm(2B_n) is within tol of its spectral
/// rounding. The final 2B_n is rounded to a projector. Throws NoConvergence
/// (carrying the full trace) if the schedule runs out.
ResolventTrace intersection_projector_iterative(
    const Projector &p, const Projector &q, double tol = kDefaultResolventTol,
    std::int64_t n_max = kDefaultNMax, const RankPolicy &policy = {});

/// Limit of ||S T_n|| with T_n = (T + I/n)^-1 T for positive T.
struct StrictLimitCheck {
  std::vector<std::int64_t> schedule;
  std::vector<double> norms;  // ||S T_n|| per scheduled n
  double limit_estimate = 0.0;
  double target = 0.0;  // ||S P_{R(T)}||
  bool monotone = true;
};
/// Throws NotPositive if t is not Hermitian positive semidefinite within 1e-10.
StrictLimitCheck strict_limit_norm_check(const CMatrix &s, const CMatrix &t,
                                         std::int64_t n_max = kDefaultNMax,
                                         const RankPolicy &policy = {});

/// Powers of two 1, 2, ..., 2^ceil(log2 n_max).
std::vector<std::int64_t> geometric_schedule(std::int64_t n_max);

}  // namespace tpk
