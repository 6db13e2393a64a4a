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
#include <numbers>

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "tpk/error.hpp"
#include "tpk/halmos.hpp"
#include "tpk/resolvent.hpp"

namespace tpk {
namespace {

using testing::diag2;
using testing::Engine;
using testing::line_projector;
using testing::oracle_norm;

constexpr double kPi = std::numbers::pi;

HalmosForm theta_form(double theta) {
  return halmos_decompose(Projector::certify(diag2(1, 0)),
                          Projector::certify(line_projector(theta)));
}

TEST_CASE("theta family has q0 = cos^2") {
  for (const double theta : {kPi / 6, kPi / 4, kPi / 3}) {
    const HalmosForm form = theta_form(theta);
    REQUIRE(form.generic_rank() == 1);
    CHECK(form.decomposition.ranks() ==
          std::array<std::ptrdiff_t, 6>{0, 0, 0, 0, 1, 1});
    const double c = std::cos(theta);
    CHECK(std::abs(form.q0(0, 0) - c * c) < 1e-12);
    CHECK(std::abs(std::abs(form.u0(0, 0)) - 1.0) < 1e-12);
  }
  CHECK(std::abs(theta_form(kPi / 4).q0(0, 0).real() - 0.5) < 1e-12);
  CHECK(std::abs(theta_form(kPi / 3).q0(0, 0).real() - 0.25) < 1e-12);
}

TEST_CASE("equal projections have an empty generic part") {
  const Projector p = Projector::certify(line_projector(0.8));
  const HalmosForm form = halmos_decompose(p, p);
  CHECK(form.degenerate_generic_part);
  CHECK(form.generic_rank() == 0);
  const auto [p2, q2] = reconstruct(form);
  CHECK(gap(p2, p) < 1e-14);
  CHECK(gap(q2, p) < 1e-14);
  const CMatrix u = build_intertwiner(form);
  CHECK(oracle_norm(u - CMatrix::Identity(2, 2)) < 1e-14);
  const AngleOperators ops = angle_operators(p, p, 10);
  CHECK(oracle_norm(ops.first) < 1e-14);
  CHECK(oracle_norm(ops.second) < 1e-14);
}

TEST_CASE("round trip on fixtures and random pairs") {
  const HalmosForm form = theta_form(kPi / 4);
  const auto [p, q] = reconstruct(form);
  CHECK(oracle_norm(p.matrix() - diag2(1, 0)) < 1e-10);
  CHECK(oracle_norm(q.matrix() - line_projector(kPi / 4)) < 1e-10);

  Engine rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const auto pair = testing::random_pair(16, rng);
    const HalmosForm f = halmos_decompose(pair.pp(), pair.qq());
    CHECK_NOTHROW(validate_form(f));
    const auto [p2, q2] = reconstruct(f);
    CHECK(oracle_norm(p2.matrix() - pair.p) < 1e-8);
    CHECK(oracle_norm(q2.matrix() - pair.q) < 1e-8);
    CHECK(oracle_norm(f.u_pq * f.u_pq.adjoint() - CMatrix::Identity(16, 16)) <
          1e-9);
    if (f.generic_rank() > 0) {
      Eigen::SelfAdjointEigenSolver<CMatrix> es(f.q0, Eigen::EigenvaluesOnly);
      CHECK(es.eigenvalues().minCoeff() > kGenericMargin);
      CHECK(es.eigenvalues().maxCoeff() < 1.0 - kGenericMargin);
      const CMatrix id = CMatrix::Identity(f.generic_rank(), f.generic_rank());
      CHECK(oracle_norm(f.u0.adjoint() * f.u0 - id) < 1e-9);
    }
  }
}

TEST_CASE("q0 near the spectrum edge is a certificate failure") {
  // The angle is still resolved as generic, but cos^2 = 1 - 9e-10.
  try {
    theta_form(3e-5);
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kCertificateFailure);
  }
}

TEST_CASE("malformed forms are rejected") {
  HalmosForm form = theta_form(kPi / 5);
  HalmosForm bad_u0 = form;
  bad_u0.u0 *= 2.0;
  HalmosForm bad_q0 = form;
  bad_q0.q0(0, 0) = 1.5;
  HalmosForm bad_unitary = form;
  bad_unitary.u_pq(0, 0) += 0.1;
  for (const HalmosForm *f : {&bad_u0, &bad_q0, &bad_unitary}) {
    try {
      reconstruct(*f);
      FAIL("expected an error");
    } catch (const Error &e) {
      CHECK(e.code() == ErrorCode::kInvalidForm);
    }
  }
}

TEST_CASE("polar partial isometry") {
  Engine rng(22);
  const CMatrix u = testing::random_unitary(4, rng);
  CHECK(oracle_norm(polar_partial_isometry(u) - u) < 1e-12);
  CHECK(oracle_norm(polar_partial_isometry(diag2(3, 0)) - diag2(1, 0)) < 1e-15);

  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix t = testing::gaussian(6, 3, rng) * testing::gaussian(3, 6, rng);
    const CMatrix w = polar_partial_isometry(t);
    const CMatrix abs_t = psd_sqrt(t.adjoint() * t);
    CHECK(oracle_norm(w * abs_t - t) < 1e-9 * oracle_norm(t));
    CHECK(oracle_norm(psd_sqrt(t * t.adjoint()) * w - t) < 1e-9 * oracle_norm(t));
    // W*W projects onto R(T*), WW* onto R(T).
    CHECK(oracle_norm(w.adjoint() * w -
                      testing::oracle_projector(testing::oracle_range(t.adjoint()))) <
          1e-9);
    CHECK(oracle_norm(w * w.adjoint() -
                      testing::oracle_projector(testing::oracle_range(t))) < 1e-9);
  }
}

TEST_CASE("intertwiner conjugates the two angle operators") {
  const Projector p = Projector::certify(diag2(1, 0));
  const Projector q = Projector::certify(line_projector(kPi / 4));
  const CMatrix u = build_intertwiner(halmos_decompose(p, q));
  const AngleOperators ops = angle_operators(p, q, 10);
  CHECK(oracle_norm(u * ops.first * u.adjoint() - ops.second) < 1e-12);

  Engine rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pair = testing::random_pair(16, rng);
    const CMatrix w = build_intertwiner(halmos_decompose(pair.pp(), pair.qq()));
    CHECK(oracle_norm(w * w.adjoint() - CMatrix::Identity(16, 16)) < 1e-9);
    for (const std::int64_t n : {1, 100}) {
      const AngleOperators a = angle_operators(pair.pp(), pair.qq(), n);
      CHECK(oracle_norm(w * a.first * w.adjoint() - a.second) < 1e-9);
    }
  }
}

TEST_CASE("generic block matches the compressed Q") {
  Engine rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pair = testing::random_pair(12, 6, 6, 0, rng);
    const HalmosForm f = halmos_decompose(pair.pp(), pair.qq());
    const auto &spaces = f.decomposition.spaces;
    const Eigen::Index g = f.generic_rank();
    REQUIRE(g > 0);
    CMatrix b(12, 2 * g);
    b << spaces[4].basis(), spaces[5].basis();
    CHECK(oracle_norm(b.adjoint() * pair.q * b - generic_block(f.q0, f.u0)) <
          1e-9);
  }
}

}  // namespace
}  // namespace tpk
