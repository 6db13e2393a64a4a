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
#include <limits>

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "tpk/error.hpp"
#include "tpk/linalg.hpp"

namespace tpk {
namespace {

using testing::Engine;
using testing::gaussian;
using testing::oracle_norm;

TEST_CASE("adjoint conjugates and transposes") {
  CMatrix a(1, 1);
  a(0, 0) = {2.0, 3.0};
  CHECK(adjoint(a)(0, 0) == Complex(2.0, -3.0));
  CHECK(adjoint(identity(4)) == identity(4));

  Engine rng(1);
  const CMatrix m = gaussian(3, 2, rng);
  const CMatrix x = gaussian(2, 1, rng);
  const CMatrix y = gaussian(3, 1, rng);
  // <m x, y> = <x, m* y>
  const Complex lhs = (y.adjoint() * (m * x))(0, 0);
  const Complex rhs = ((adjoint(m) * y).adjoint() * x)(0, 0);
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("spectral norm") {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = -4.0;
  CHECK(spectral_norm(d) == doctest::Approx(4.0).epsilon(1e-15));

  CMatrix shift = CMatrix::Zero(2, 2);
  shift(0, 1) = 1.0;
  CHECK(spectral_norm(shift) == doctest::Approx(1.0).epsilon(1e-15));

  CHECK(spectral_norm(CMatrix(0, 3)) == 0.0);

  Engine rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix a = gaussian(5, 5, rng);
    const double n = spectral_norm(a);
    // C*-identity and agreement with an eigenvalue-based evaluation.
    CHECK(std::abs(n * n - spectral_norm(a.adjoint() * a)) < 1e-12 * n * n);
    CHECK(std::abs(n - oracle_norm(a)) < 1e-12 * n);
  }
}

TEST_CASE("pseudoinverse") {
  CHECK((pinv(identity(3)) - identity(3)).norm() < 1e-15);

  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  CMatrix expected = CMatrix::Zero(2, 2);
  expected(0, 0) = 0.5;
  CHECK((pinv(d) - expected).norm() < 1e-15);

  Engine rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix t = gaussian(6, 2, rng) * gaussian(2, 4, rng);
    const CMatrix x = pinv(t);
    CHECK(x.rows() == 4);
    CHECK(x.cols() == 6);
    CHECK(oracle_norm(t * x * t - t) < 1e-10);
    CHECK(oracle_norm(x * t * x - x) < 1e-10);
    CHECK(oracle_norm((t * x).adjoint() - t * x) < 1e-10);
    CHECK(oracle_norm((x * t).adjoint() - x * t) < 1e-10);
  }
}

TEST_CASE("range and null bases") {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  const CMatrix r = range_basis(d);
  const CMatrix n = null_basis(d);
  REQUIRE(r.cols() == 1);
  REQUIRE(n.cols() == 1);
  CHECK(std::abs(std::abs(r(0, 0)) - 1.0) < 1e-15);
  CHECK(std::abs(std::abs(n(1, 0)) - 1.0) < 1e-15);

  const CMatrix z = CMatrix::Zero(3, 3);
  CHECK(range_basis(z).cols() == 0);
  CHECK(range_basis(z).rows() == 3);
  CHECK(null_basis(z).cols() == 3);
  CHECK(orthonormality_residual(null_basis(z)) < 1e-15);

  Engine rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix t = gaussian(5, 5, rng);
    // R(T) = R(T T*), by two factorizations.
    CHECK(subspace_gap(range_basis(t), range_basis(t * t.adjoint())) < 1e-9);
    const CMatrix low = gaussian(5, 3, rng) * gaussian(3, 5, rng);
    const CMatrix rb = range_basis(low);
    const CMatrix nb = null_basis(low);
    CHECK(rb.cols() == 3);
    CHECK(nb.cols() == 2);
    CHECK(oracle_norm(low * nb) < 1e-10 * oracle_norm(low));
    CHECK(testing::oracle_subspace_distance(rb, testing::oracle_range(low)) <
          1e-9);
  }
}

TEST_CASE("rank policy") {
  const RankPolicy policy;
  RVector s(4);
  s << 1.0, 1e-5, 1e-11, 0.0;
  CHECK(policy.rank_of(s) == 2);
  RVector tiny(2);
  tiny << 1e-15, 1e-16;
  CHECK(policy.rank_of(tiny) == 0);
  CHECK(policy.rank_of(RVector(0)) == 0);
  CHECK(policy.cutoff(10.0) == doctest::Approx(1e-9));
}

TEST_CASE("non-finite entries are rejected") {
  CMatrix a = identity(2);
  CHECK(is_finite(a));
  a(1, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_FALSE(is_finite(a));
  try {
    require_finite(a, "input");
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kInvalidArgument);
  }
}

TEST_CASE("hermitian functional calculus") {
  Engine rng(5);
  const CMatrix g = gaussian(6, 6, rng);
  const CMatrix h = g * g.adjoint();
  const CMatrix root = psd_sqrt(h);
  CHECK(oracle_norm(root * root - h) < 1e-10 * oracle_norm(h));
  CHECK(oracle_norm(root - root.adjoint()) < 1e-12);

  const HermitianEigen e = hermitian_eigen(h);
  for (Eigen::Index i = 1; i < e.values.size(); ++i) {
    CHECK(e.values(i - 1) <= e.values(i));
  }
  const CMatrix back =
      e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
  CHECK(oracle_norm(back - h) < 1e-10 * oracle_norm(h));

  const CMatrix sq =
      hermitian_function(h, [](double x) { return x * x; }, 0.0,
                         std::numeric_limits<double>::infinity());
  CHECK(oracle_norm(sq - h * h) < 1e-9 * oracle_norm(h * h));
}

TEST_CASE("subspace gap") {
  CMatrix e1 = CMatrix::Zero(3, 1);
  e1(0, 0) = 1.0;
  CMatrix e2 = CMatrix::Zero(3, 1);
  e2(1, 0) = 1.0;
  CHECK(subspace_gap(e1, e1) < 1e-15);
  CHECK(subspace_gap(e1, e2) == doctest::Approx(1.0));
  CHECK(subspace_gap(e1, CMatrix(3, 0)) == doctest::Approx(1.0));
  CHECK(subspace_gap(CMatrix(3, 0), CMatrix(3, 0)) == 0.0);
}

}  // namespace
}  // namespace tpk
