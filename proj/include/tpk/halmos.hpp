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

#include <utility>

#include "tpk/subspaces.hpp"

namespace tpk {

/// Eigenvalues of q0 must stay this far inside (0, 1).
inline constexpr double kGenericMargin = 1e-9;

/// Canonical form of a pair of projections. In the coordinates given by
/// u_pq (rows grouped H1..H6), P is I ⊕ I ⊕ 0 ⊕ 0 ⊕ I ⊕ 0 and Q is
/// I ⊕ 0 ⊕ I ⊕ 0 ⊕ T, where T on H5 ⊕ H6 is
///
///   [ Q0                        Q0^½ (I-Q0)^½ U0  ]
///   [ U0* Q0^½ (I-Q0)^½         U0* (I-Q0) U0     ]
///
/// The classical cosine/sine pair of the generic part is C = Q0^½,
/// D = (I-Q0)^½, and the connecting unitary is U0*.
struct HalmosForm {
  SixSpaceDecomposition decomposition;
  CMatrix u_pq;  // d x d unitary
  CMatrix q0;    // r5 x r5 Hermitian, spectrum in (0, 1)
  CMatrix u0;    // r5 x r6 unitary (r5 == r6)
  double tol = 1e-9;
  /// Set when H5 = {0}; q0 and u0 are then empty.
  bool degenerate_generic_part = false;

  std::ptrdiff_t dim() const { return u_pq.rows(); }
  std::ptrdiff_t generic_rank() const { return q0.rows(); }
};

/// Throws CertificateFailure when q0 has an eigenvalue within
/// kGenericMargin of 0 or 1, or when U0 fails to be unitary.
HalmosForm halmos_decompose(const Projector &p, const Projector &q,
                            const RankPolicy &policy = {});

/// Rebuilds (P, Q) from the blocks. Throws InvalidForm on a malformed form.
std::pair<Projector, Projector> reconstruct(const HalmosForm &form);

/// Partial isometry U of T = U (T*T)^½ = (TT*)^½ U, vanishing on N(T).
CMatrix polar_partial_isometry(const CMatrix &t, const RankPolicy &policy = {});

/// The d x d unitary u_pq* (I ⊕ [[0, U0], [-U0*, 0]]) u_pq, which conjugates
/// PQ(2I-P-Q)(2I-P-Q+I/n)^-1 into (I-P)(I-Q)(P+Q)(P+Q+I/n)^-1 for every n.
CMatrix build_intertwiner(const HalmosForm &form);

/// Throws InvalidForm if the form's structural invariants fail.
void validate_form(const HalmosForm &form);

/// Q's H5 ⊕ H6 block assembled from q0 and u0.
CMatrix generic_block(const CMatrix &q0, const CMatrix &u0);

}  // namespace tpk
