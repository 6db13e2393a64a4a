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

#include <cmath>
#include <functional>
#include <numbers>

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "tpk/error.hpp"
#include "tpk/subspaces.hpp"

namespace tpk {
namespace {

using testing::diag2;
using testing::Engine;
using testing::line_projector;
using testing::oracle_intersection;
using testing::oracle_norm;
using testing::oracle_projector;
using testing::oracle_subspace_distance;

ErrorCode code_of(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

TEST_CASE("subspace basis validation") {
  CHECK(SubspaceBasis::empty(4).rank() == 0);
  CHECK(SubspaceBasis::empty(4).ambient_dim() == 4);
  CHECK(SubspaceBasis::whole(3).rank() == 3);

  CMatrix skew(2, 1);
  skew << 1.0, 1.0;
  CHECK(code_of([&] { SubspaceBasis b(skew); }) ==
        ErrorCode::kNonOrthonormalBasis);
  // Just inside the rejection threshold is accepted.
  CMatrix nearly(1, 1);
  nearly(0, 0) = 1.0 + 1e-9;
  CHECK_NOTHROW(SubspaceBasis{nearly});
}

TEST_CASE("projector certification") {
  const Projector p = Projector::certify(diag2(1, 0));
  CHECK(p.rank() == 1);
  CHECK_FALSE(p.certificate().repaired);
  CHECK(p.complement().matrix() == diag2(0, 1));

  // Slightly off: repaired by symmetrizing and spectral rounding.
  CMatrix off = line_projector(0.3);
  off(0, 1) += 3e-10;
  const Projector r = Projector::certify(off);
  CHECK(r.certificate().repaired);
  CHECK(oracle_norm(r.matrix() * r.matrix() - r.matrix()) < 1e-14);
  CHECK(oracle_norm(r.matrix() - line_projector(0.3)) < 1e-9);

  // Far off: rejected.
  CHECK(code_of([] { Projector::certify(diag2(1, 0.5)); }) ==
        ErrorCode::kCertificateFailure);
  CMatrix rect(2, 3);
  rect.setZero();
  CHECK(code_of([&] { Projector::certify(rect); }) ==
        ErrorCode::kDimensionMismatch);

  const Projector rounded = Projector::round(diag2(0.9, 0.2));
  CHECK(rounded.matrix() == diag2(1, 0));
}

TEST_CASE("project_onto") {
  CMatrix e1(2, 1);
  e1 << 1.0, 0.0;
  CHECK(project_onto(SubspaceBasis(e1)).matrix() == diag2(1, 0));
  CHECK(project_onto(SubspaceBasis::empty(2)).matrix() == CMatrix::Zero(2, 2));
  CMatrix diag(2, 1);
  diag << std::sqrt(0.5), std::sqrt(0.5);
  const CMatrix half = project_onto(SubspaceBasis(diag)).matrix();
  CHECK(oracle_norm(half - CMatrix::Constant(2, 2, 0.5)) < 1e-15);
}

TEST_CASE("range_sum") {
  const Projector p = Projector::certify(diag2(1, 0));
  const Projector q = Projector::certify(diag2(0, 1));
  CHECK(range_sum(p, p).rank() == 1);
  CHECK(gap(range_sum(p, p), range_of(p)) < 1e-15);
  CHECK(range_sum(p, q).rank() == 2);
  CHECK(code_of([&] { range_sum(p, Projector::identity(3)); }) ==
        ErrorCode::kDimensionMismatch);

  Engine rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const auto pair = testing::random_pair(16, rng);
    CMatrix cols(16, 32);
    cols << pair.p, pair.q;
    const CMatrix oracle = testing::oracle_range(cols);
    const SubspaceBasis sum = range_sum(pair.pp(), pair.qq());
    CHECK(sum.rank() == oracle.cols());
    CHECK(oracle_subspace_distance(sum.basis(), oracle) < 1e-9);
  }
}

TEST_CASE("intersect_ranges") {
  const Projector p = Projector::certify(diag2(1, 0));
  CHECK(gap(intersect_ranges(p, p), range_of(p)) < 1e-15);
  const Projector diag =
      Projector::certify(line_projector(std::numbers::pi / 4));
  CHECK(intersect_ranges(p, diag).rank() == 0);

  // Dimension 8, sharing exactly span(e1, e2).
  Engine rng(12);
  auto planted = testing::random_pair(6, 2, 3, 0, rng);
  const CMatrix pp = testing::block_diag(CMatrix::Identity(2, 2), planted.p);
  const CMatrix qq = testing::block_diag(CMatrix::Identity(2, 2), planted.q);
  const SubspaceBasis meet =
      intersect_ranges(Projector::certify(pp), Projector::certify(qq));
  REQUIRE(meet.rank() == 2);
  const CMatrix e12 = CMatrix::Identity(8, 2);
  CHECK(subspace_gap(meet.basis(), e12) < 1e-9);

  for (int trial = 0; trial < 40; ++trial) {
    const auto pair = testing::random_pair(12, rng);
    const SubspaceBasis b = intersect_ranges(pair.pp(), pair.qq());
    const CMatrix oracle = oracle_intersection(pair.p, pair.q);
    CHECK(b.rank() == pair.shared.cols());
    CHECK(b.rank() == oracle.cols());
    CHECK(oracle_subspace_distance(b.basis(), oracle) < 1e-9);
    CHECK(b.orthonormality_residual() < 1e-12);
  }
}

TEST_CASE("six-space decomposition examples") {
  const Projector p = Projector::certify(diag2(1, 0));
  const auto commuting = six_space_decomposition(p, p).ranks();
  CHECK(commuting == std::array<std::ptrdiff_t, 6>{1, 0, 0, 1, 0, 0});

  const Projector q = Projector::certify(line_projector(std::numbers::pi / 4));
  const auto generic = six_space_decomposition(p, q).ranks();
  CHECK(generic == std::array<std::ptrdiff_t, 6>{0, 0, 0, 0, 1, 1});

  const Projector pb =
      Projector::certify(testing::block_diag(diag2(1, 0), diag2(1, 0)));
  const Projector qb = Projector::certify(
      testing::block_diag(diag2(1, 0), line_projector(std::numbers::pi / 4)));
  const auto both = six_space_decomposition(pb, qb).ranks();
  CHECK(both == std::array<std::ptrdiff_t, 6>{1, 0, 0, 1, 1, 1});
}

TEST_CASE("six-space decomposition invariants on random pairs") {
  Engine rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const auto pair = testing::random_pair(10, rng);
    const auto dec = six_space_decomposition(pair.pp(), pair.qq());
    CMatrix sum = CMatrix::Zero(10, 10);
    for (std::size_t i = 0; i < 6; ++i) {
      sum += dec.projectors[i].matrix();
      for (std::size_t j = i + 1; j < 6; ++j) {
        CHECK(oracle_norm(dec.projectors[i].matrix() *
                          dec.projectors[j].matrix()) < 1e-9);
      }
    }
    CHECK(oracle_norm(sum - CMatrix::Identity(10, 10)) < 1e-9);
    const auto &pr = dec.projectors;
    CHECK(oracle_norm(pair.p - pr[0].matrix() - pr[1].matrix() - pr[4].matrix()) <
          1e-9);
    const auto r = dec.ranks();
    CHECK(r[4] == r[5]);
    CHECK(r[0] == pair.shared.cols());
    // H2 = R(P) ∩ N(Q) against the brute-force intersection.
    const CMatrix h2 =
        oracle_intersection(pair.p, CMatrix::Identity(10, 10) - pair.q);
    CHECK(r[1] == h2.cols());
  }
}

TEST_CASE("projection onto the range of QP") {
  const Projector q = Projector::certify(line_projector(0.4));
  CHECK(gap(projection_onto_range_qp(Projector::identity(2), q), q) < 1e-15);
  CHECK(projection_onto_range_qp(Projector::zero(2), q).rank() == 0);

  Engine rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    const auto pair = testing::random_pair(12, rng);
    const Projector formula = projection_onto_range_qp(pair.pp(), pair.qq());
    const CMatrix svd_route = oracle_projector(testing::oracle_range(pair.q * pair.p));
    CHECK(oracle_norm(formula.matrix() - svd_route) < 1e-9);
  }
}

TEST_CASE("orthogonal split of the range of QP") {
  const Projector p = Projector::certify(line_projector(0.7));
  const auto [same_first, same_second] = range_qp_orthogonal_split(p, p);
  CHECK(same_first.rank() == 0);
  CHECK(gap(same_second, range_of(p)) < 1e-12);

  const auto [first, second] = range_qp_orthogonal_split(
      Projector::certify(diag2(1, 0)),
      Projector::certify(line_projector(std::numbers::pi / 3)));
  CHECK(first.rank() == 1);
  CHECK(second.rank() == 0);

  Engine rng(15);
  for (int trial = 0; trial < 30; ++trial) {
    const auto pair = testing::random_pair(10, rng);
    const auto [a, b] = range_qp_orthogonal_split(pair.pp(), pair.qq());
    if (a.rank() > 0 && b.rank() > 0) {
      CHECK(oracle_norm(a.basis().adjoint() * b.basis()) < 1e-9);
    }
    CMatrix both(10, a.rank() + b.rank());
    both << a.basis(), b.basis();
    CHECK(oracle_subspace_distance(both, testing::oracle_range(pair.q * pair.p)) <
          1e-9);
  }
}

TEST_CASE("harmonious ranks") {
  const Projector p = Projector::certify(diag2(1, 0));
  const Projector q = Projector::certify(line_projector(0.5));
  const HarmoniousRanks h = harmonious_ranks(p, q);
  CHECK(h.harmonious);
  CHECK(h.ranks == std::array<std::ptrdiff_t, 4>{2, 2, 2, 2});
  const HarmoniousRanks same = harmonious_ranks(p, p);
  CHECK(same.ranks == std::array<std::ptrdiff_t, 4>{1, 2, 2, 1});
}

}  // namespace
}  // namespace tpk
