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
#include <random>
#include <utility>

#include "tpk/subspaces.hpp"

namespace tpk {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; derives independent per-trial seeds from a master
/// seed.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream);

/// Standard complex Gaussian entries (real and imaginary parts N(0, 1/2)).
CMatrix complex_gaussian(std::ptrdiff_t rows, std::ptrdiff_t cols, Rng &rng);

/// Orthonormalized Gaussian columns: Haar-distributed point of the Stiefel
/// manifold. QR with the phases of R's diagonal moved into Q.
CMatrix haar_orthonormal(std::ptrdiff_t rows, std::ptrdiff_t cols, Rng &rng);
CMatrix haar_unitary(std::ptrdiff_t d, Rng &rng);

/// Recipe for a random pair of projections with an engineered intersection.
struct PairSpec {
  std::ptrdiff_t dim = 0;
  std::ptrdiff_t rank_p = 0;
  std::ptrdiff_t rank_q = 0;
  std::ptrdiff_t shared_rank = 0;
  std::uint64_t seed = 0;
};

/// Throws InvalidSpec unless 0 <= shared <= min(rank_p, rank_q) <= dim and
/// rank_p + rank_q - shared <= dim (the independent parts must fit without a
/// forced extra intersection).
void validate(const PairSpec &spec);

/// R(P) ∩ R(Q) is planted as the span of the first `shared_rank` coordinate
/// axes; the remaining columns of each range are independent Haar-random
/// directions in the orthogonal complement. Deterministic in the seed.
std::pair<Projector, Projector> generate_pair(const PairSpec &spec);

/// A valid spec with the given dim and shared rank and ranks drawn uniformly
/// from the feasible region. `shared_rank` is clipped to `dim`.
PairSpec random_pair_spec(std::ptrdiff_t dim, std::ptrdiff_t shared_rank,
                          std::uint64_t seed);

}  // namespace tpk
