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

// Exercises the shared library through its C header only.

#include <cmath>
#include <cstring>
#include <string>

#include "doctest.h"
#include "tpk/tpk.h"

namespace {

std::string take(char *s) {
  std::string out = s ? s : "";
  tpk_string_free(s);
  return out;
}

TEST_CASE("status names and errors") {
  CHECK(std::string(tpk_status_name(TPK_OK)) == "Ok");
  CHECK(std::string(tpk_status_name(TPK_ERR_UNKNOWN_SUITE)) == "UnknownSuite");
  CHECK(std::string(tpk_version()).size() > 0);

  tpk_pair *pair = nullptr;
  CHECK(tpk_pair_generate(4, 5, 1, 0, 1, &pair) == TPK_ERR_INVALID_SPEC);
  CHECK(pair == nullptr);
  CHECK(std::strlen(tpk_last_error()) > 0);

  CHECK(tpk_pair_from_json("{", &pair) == TPK_ERR_PARSE);
  CHECK(tpk_pair_generate(4, 2, 2, 0, 1, nullptr) == TPK_ERR_INVALID_ARGUMENT);
}

TEST_CASE("matrices") {
  const double data[] = {1, 2, 3, 4, 5, 6, 7, 8};
  tpk_matrix *m = nullptr;
  REQUIRE(tpk_matrix_create(2, 2, data, &m) == TPK_OK);
  CHECK(tpk_matrix_rows(m) == 2);
  CHECK(tpk_matrix_cols(m) == 2);
  double re = 0, im = 0;
  REQUIRE(tpk_matrix_get(m, 1, 0, &re, &im) == TPK_OK);
  CHECK(re == 5);
  CHECK(im == 6);
  CHECK(tpk_matrix_get(m, 2, 0, &re, &im) == TPK_ERR_INVALID_ARGUMENT);
  char *json = nullptr;
  REQUIRE(tpk_matrix_to_json(m, &json) == TPK_OK);
  const std::string text = take(json);
  CHECK(text == R"({"rows": 2, "cols": 2, "data": [[1, 2], [3, 4], [5, 6], [7, 8]]})");
  tpk_matrix *back = nullptr;
  REQUIRE(tpk_matrix_from_json(text.c_str(), &back) == TPK_OK);
  REQUIRE(tpk_matrix_get(back, 1, 1, &re, &im) == TPK_OK);
  CHECK(re == 7);
  tpk_matrix_free(back);
  tpk_matrix_free(m);

  const double nan_data[] = {NAN, 0};
  CHECK(tpk_matrix_create(1, 1, nan_data, &m) == TPK_ERR_INVALID_ARGUMENT);
}

TEST_CASE("pairs, forms and angles") {
  tpk_pair *pair = nullptr;
  REQUIRE(tpk_pair_generate(10, 4, 5, 1, 42, &pair) == TPK_OK);
  CHECK(tpk_pair_dim(pair) == 10);
  int64_t meet = -1;
  REQUIRE(tpk_pair_intersection_rank(pair, &meet) == TPK_OK);
  CHECK(meet == 1);

  char *json = nullptr;
  REQUIRE(tpk_pair_to_json(pair, &json) == TPK_OK);
  const std::string text = take(json);
  tpk_pair *copy = nullptr;
  REQUIRE(tpk_pair_from_json(text.c_str(), &copy) == TPK_OK);

  tpk_halmos *form = nullptr;
  REQUIRE(tpk_halmos_decompose(copy, &form) == TPK_OK);
  int64_t ranks[6] = {};
  REQUIRE(tpk_halmos_ranks(form, ranks) == TPK_OK);
  CHECK(ranks[0] == 1);
  CHECK(ranks[4] == ranks[5]);
  CHECK(ranks[0] + ranks[1] + ranks[4] == 4);
  tpk_pair *rebuilt = nullptr;
  REQUIRE(tpk_halmos_reconstruct(form, &rebuilt) == TPK_OK);
  tpk_matrix *p0 = nullptr;
  tpk_matrix *p1 = nullptr;
  REQUIRE(tpk_pair_p(pair, &p0) == TPK_OK);
  REQUIRE(tpk_pair_p(rebuilt, &p1) == TPK_OK);
  double worst = 0;
  for (size_t i = 0; i < 10; ++i) {
    for (size_t j = 0; j < 10; ++j) {
      double a_re, a_im, b_re, b_im;
      tpk_matrix_get(p0, i, j, &a_re, &a_im);
      tpk_matrix_get(p1, i, j, &b_re, &b_im);
      worst = std::max(worst, std::hypot(a_re - b_re, a_im - b_im));
    }
  }
  CHECK(worst < 1e-8);
  REQUIRE(tpk_halmos_to_json(form, &json) == TPK_OK);
  CHECK(take(json).find("\"u0\"") != std::string::npos);

  double c = -1, angle = -1;
  REQUIRE(tpk_angle(pair, &c, &angle) == TPK_OK);
  CHECK(c >= 0.0);
  CHECK(c < 1.0);
  CHECK(angle == doctest::Approx(std::acos(c)));
  REQUIRE(tpk_angle_report_json(pair, &json) == TPK_OK);
  CHECK(take(json).find("\"duality_gap\"") != std::string::npos);

  tpk_matrix_free(p0);
  tpk_matrix_free(p1);
  tpk_pair_free(rebuilt);
  tpk_halmos_free(form);
  tpk_pair_free(copy);
  tpk_pair_free(pair);
}

TEST_CASE("resolvent") {
  tpk_pair *pair = nullptr;
  REQUIRE(tpk_pair_generate(6, 3, 3, 1, 5, &pair) == TPK_OK);
  tpk_resolvent_trace *trace = nullptr;
  const tpk_status st = tpk_resolvent_run(pair, 0.5, 1 << 20, &trace);
  CHECK(st == TPK_OK);
  REQUIRE(trace != nullptr);
  CHECK(tpk_resolvent_converged(trace) == 1);
  CHECK(tpk_resolvent_steps(trace) > 0);
  char *csv = nullptr;
  REQUIRE(tpk_resolvent_csv(trace, &csv) == TPK_OK);
  CHECK(take(csv).rfind("n,err_to_oracle,diff_ab,diff_bc,norm_b\n", 0) == 0);
  tpk_resolvent_trace_free(trace);

  // A two-step schedule cannot meet a tight tolerance; the trace survives.
  trace = nullptr;
  CHECK(tpk_resolvent_run(pair, 1e-9, 2, &trace) == TPK_ERR_NO_CONVERGENCE);
  REQUIRE(trace != nullptr);
  CHECK(tpk_resolvent_converged(trace) == 0);
  CHECK(tpk_resolvent_steps(trace) == 2);
  tpk_resolvent_trace_free(trace);
  tpk_pair_free(pair);
}

TEST_CASE("verification suites") {
  CHECK(tpk_suite_count() == 7);
  CHECK(tpk_suite_name(7) == nullptr);
  tpk_verify_options o;
  tpk_verify_options_init(&o, "norm-eq");
  o.dim = 6;
  o.trials = 10;
  o.include_wall_time = 0;
  char *json = nullptr;
  int passed = 0;
  REQUIRE(tpk_verify(&o, &json, &passed) == TPK_OK);
  CHECK(passed == 1);
  CHECK(take(json).find("\"pass\": true") != std::string::npos);

  o.suite = "bogus";
  CHECK(tpk_verify(&o, &json, &passed) == TPK_ERR_UNKNOWN_SUITE);

  const size_t grids[] = {17, 33};
  REQUIRE(tpk_counterexample(grids, 2, 20, 1, &json, &passed) == TPK_OK);
  CHECK(passed == 1);
  take(json);
}

}  // namespace
