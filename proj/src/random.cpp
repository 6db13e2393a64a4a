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

#include "tpk/random.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tpk/error.hpp"

namespace tpk {

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

CMatrix complex_gaussian(std::ptrdiff_t rows, std::ptrdiff_t cols, Rng &rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix out(rows, cols);
  for (std::ptrdiff_t j = 0; j < cols; ++j) {
    for (std::ptrdiff_t i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      out(i, j) = Complex(re, im);
    }
  }
  return out;
}

CMatrix haar_orthonormal(std::ptrdiff_t rows, std::ptrdiff_t cols, Rng &rng) {
  if (cols > rows) {
    throw Error(ErrorCode::kInvalidArgument,
                "haar_orthonormal: more columns than rows");
  }
  if (cols == 0) return CMatrix(rows, 0);
  const CMatrix g = complex_gaussian(rows, cols, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(rows, cols);
  const CMatrix &r = qr.matrixQR();
  for (std::ptrdiff_t j = 0; j < cols; ++j) {
    const Complex diag = r(j, j);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(j) *= diag / mag;
  }
  return q;
}

CMatrix haar_unitary(std::ptrdiff_t d, Rng &rng) {
  return haar_orthonormal(d, d, rng);
}

void validate(const PairSpec &s) {
  const auto fail = [&](const char *why) {
    throw Error(ErrorCode::kInvalidSpec,
                std::string("invalid pair spec (dim=") + std::to_string(s.dim) +
                    ", rank_p=" + std::to_string(s.rank_p) +
                    ", rank_q=" + std::to_string(s.rank_q) +
                    ", shared_rank=" + std::to_string(s.shared_rank) +
                    "): " + why);
  };
  if (s.dim < 1) fail("dim must be positive");
  if (s.shared_rank < 0) fail("shared_rank must be nonnegative");
  if (s.shared_rank > std::min(s.rank_p, s.rank_q)) {
    fail("shared_rank exceeds a range rank");
  }
  if (std::max(s.rank_p, s.rank_q) > s.dim) fail("rank exceeds dim");
  if (s.rank_p + s.rank_q - s.shared_rank > s.dim) {
    fail("ranges cannot meet only in the planted block");
  }
}

std::pair<Projector, Projector> generate_pair(const PairSpec &spec) {
  validate(spec);
  Rng rng(spec.seed);
  const std::ptrdiff_t d = spec.dim;
  const std::ptrdiff_t s = spec.shared_rank;
  const std::ptrdiff_t free_dim = d - s;

  // Independent directions live in the last d - s coordinates, so the
  // planted block stays exactly decoupled.
  const CMatrix free_p = haar_orthonormal(free_dim, spec.rank_p - s, rng);
  const CMatrix free_q = haar_orthonormal(free_dim, spec.rank_q - s, rng);

  const auto assemble = [&](const CMatrix &free) {
    CMatrix basis = CMatrix::Zero(d, s + free.cols());
    basis.topLeftCorner(s, s).setIdentity();
    basis.bottomRightCorner(free_dim, free.cols()) = free;
    return project_onto(SubspaceBasis(std::move(basis)));
  };
  return {assemble(free_p), assemble(free_q)};
}

PairSpec random_pair_spec(std::ptrdiff_t dim, std::ptrdiff_t shared_rank,
                          std::uint64_t seed) {
  PairSpec spec;
  spec.dim = dim;
  spec.shared_rank = std::clamp<std::ptrdiff_t>(shared_rank, 0, dim);
  spec.seed = seed;
  Rng rng(mix_seed(seed, 0x5eed));
  const std::ptrdiff_t s = spec.shared_rank;
  std::uniform_int_distribution<std::ptrdiff_t> pick_p(s, dim);
  spec.rank_p = pick_p(rng);
  std::uniform_int_distribution<std::ptrdiff_t> pick_q(s, dim + s - spec.rank_p);
  spec.rank_q = pick_q(rng);
  return spec;
}

}  // namespace tpk
