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

#include "tpk/tpk.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "tpk/cstar_sim.hpp"
#include "tpk/error.hpp"
#include "tpk/friedrichs.hpp"
#include "tpk/halmos.hpp"
#include "tpk/json_io.hpp"
#include "tpk/random.hpp"
#include "tpk/resolvent.hpp"
#include "tpk/suites.hpp"

struct tpk_matrix {
  tpk::CMatrix m;
};

struct tpk_pair {
  tpk::Projector p;
  tpk::Projector q;
};

struct tpk_halmos {
  tpk::HalmosForm form;
};

struct tpk_resolvent_trace {
  tpk::ResolventTrace trace;
};

namespace {

thread_local std::string last_error;

tpk_status to_status(tpk::ErrorCode code) {
  using tpk::ErrorCode;
  switch (code) {
    case ErrorCode::kDimensionMismatch:
      return TPK_ERR_DIMENSION_MISMATCH;
    case ErrorCode::kNonOrthonormalBasis:
      return TPK_ERR_NON_ORTHONORMAL_BASIS;
    case ErrorCode::kCertificateFailure:
      return TPK_ERR_CERTIFICATE_FAILURE;
    case ErrorCode::kInvalidForm:
      return TPK_ERR_INVALID_FORM;
    case ErrorCode::kNoConvergence:
      return TPK_ERR_NO_CONVERGENCE;
    case ErrorCode::kNotPositive:
      return TPK_ERR_NOT_POSITIVE;
    case ErrorCode::kBadGrid:
      return TPK_ERR_BAD_GRID;
    case ErrorCode::kGridMismatch:
      return TPK_ERR_GRID_MISMATCH;
    case ErrorCode::kInvalidSpec:
      return TPK_ERR_INVALID_SPEC;
    case ErrorCode::kUnknownSuite:
      return TPK_ERR_UNKNOWN_SUITE;
    case ErrorCode::kIoError:
      return TPK_ERR_IO;
    case ErrorCode::kParseError:
      return TPK_ERR_PARSE;
    case ErrorCode::kInvalidArgument:
      return TPK_ERR_INVALID_ARGUMENT;
  }
  return TPK_ERR_INTERNAL;
}

tpk_status fail(tpk_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename Fn>
tpk_status guarded(Fn &&body) {
  try {
    last_error.clear();
    body();
    return TPK_OK;
  } catch (const tpk::Error &e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc &) {
    return fail(TPK_ERR_INTERNAL, "out of memory");
  } catch (const std::exception &e) {
    return fail(TPK_ERR_INTERNAL, e.what());
  }
}

void require(bool ok, const char *what) {
  if (!ok) throw tpk::Error(tpk::ErrorCode::kInvalidArgument, what);
}

char *copy_string(const std::string &s) {
  char *out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char *tpk_version(void) { return "0.1.0"; }

const char *tpk_last_error(void) { return last_error.c_str(); }

const char *tpk_status_name(tpk_status status) {
  switch (status) {
    case TPK_OK:
      return "Ok";
    case TPK_ERR_INTERNAL:
      return "Internal";
    default:
      break;
  }
  using tpk::ErrorCode;
  for (int c = 0; c <= static_cast<int>(ErrorCode::kInvalidArgument); ++c) {
    const auto code = static_cast<ErrorCode>(c);
    if (to_status(code) == status) return tpk::error_code_name(code);
  }
  return "Unknown";
}

void tpk_string_free(char *s) { delete[] s; }

tpk_status tpk_matrix_create(size_t rows, size_t cols, const double *data,
                             tpk_matrix **out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    require(data != nullptr || rows * cols == 0, "null data");
    tpk::CMatrix m(rows, cols);
    for (size_t i = 0; i < rows; ++i) {
      for (size_t j = 0; j < cols; ++j) {
        const double *z = data + 2 * (i * cols + j);
        m(i, j) = tpk::Complex(z[0], z[1]);
      }
    }
    tpk::require_finite(m, "matrix");
    *out = new tpk_matrix{std::move(m)};
  });
}

tpk_status tpk_matrix_from_json(const char *text, tpk_matrix **out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    *out = new tpk_matrix{tpk::json::parse_matrix(text)};
  });
}

tpk_status tpk_matrix_to_json(const tpk_matrix *m, char **out) {
  return guarded([&] {
    require(m != nullptr && out != nullptr, "null argument");
    *out = copy_string(tpk::json::matrix(m->m));
  });
}

size_t tpk_matrix_rows(const tpk_matrix *m) {
  return m ? static_cast<size_t>(m->m.rows()) : 0;
}

size_t tpk_matrix_cols(const tpk_matrix *m) {
  return m ? static_cast<size_t>(m->m.cols()) : 0;
}

tpk_status tpk_matrix_get(const tpk_matrix *m, size_t i, size_t j, double *re,
                          double *im) {
  return guarded([&] {
    require(m != nullptr && re != nullptr && im != nullptr, "null argument");
    require(i < tpk_matrix_rows(m) && j < tpk_matrix_cols(m),
            "index out of range");
    *re = m->m(i, j).real();
    *im = m->m(i, j).imag();
  });
}

void tpk_matrix_free(tpk_matrix *m) { delete m; }

tpk_status tpk_pair_generate(int64_t dim, int64_t rank_p, int64_t rank_q,
                             int64_t shared_rank, uint64_t seed,
                             tpk_pair **out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    const tpk::PairSpec spec{dim, rank_p, rank_q, shared_rank, seed};
    auto [p, q] = tpk::generate_pair(spec);
    *out = new tpk_pair{std::move(p), std::move(q)};
  });
}

tpk_status tpk_pair_from_matrices(const tpk_matrix *p, const tpk_matrix *q,
                                  tpk_pair **out) {
  return guarded([&] {
    require(p != nullptr && q != nullptr && out != nullptr, "null argument");
    tpk::Projector pp = tpk::Projector::certify(p->m);
    tpk::Projector qq = tpk::Projector::certify(q->m);
    tpk::require_same_dim(pp, qq, "pair");
    *out = new tpk_pair{std::move(pp), std::move(qq)};
  });
}

tpk_status tpk_pair_from_json(const char *text, tpk_pair **out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    auto [p, q] = tpk::json::parse_pair(text);
    *out = new tpk_pair{std::move(p), std::move(q)};
  });
}

tpk_status tpk_pair_to_json(const tpk_pair *pair, char **out) {
  return guarded([&] {
    require(pair != nullptr && out != nullptr, "null argument");
    *out = copy_string(tpk::json::pair(pair->p, pair->q));
  });
}

tpk_status tpk_pair_p(const tpk_pair *pair, tpk_matrix **out) {
  return guarded([&] {
    require(pair != nullptr && out != nullptr, "null argument");
    *out = new tpk_matrix{pair->p.matrix()};
  });
}

tpk_status tpk_pair_q(const tpk_pair *pair, tpk_matrix **out) {
  return guarded([&] {
    require(pair != nullptr && out != nullptr, "null argument");
    *out = new tpk_matrix{pair->q.matrix()};
  });
}

size_t tpk_pair_dim(const tpk_pair *pair) {
  return pair ? static_cast<size_t>(pair->p.dim()) : 0;
}

tpk_status tpk_pair_intersection_rank(const tpk_pair *pair, int64_t *out) {
  return guarded([&] {
    require(pair != nullptr && out != nullptr, "null argument");
    *out = tpk::intersect_ranges(pair->p, pair->q).rank();
  });
}

void tpk_pair_free(tpk_pair *pair) { delete pair; }

tpk_status tpk_halmos_decompose(const tpk_pair *pair, tpk_halmos **out) {
  return guarded([&] {
    require(pair != nullptr && out != nullptr, "null argument");
    *out = new tpk_halmos{tpk::halmos_decompose(pair->p, pair->q)};
  });
}

tpk_status tpk_halmos_ranks(const tpk_halmos *form, int64_t ranks[6]) {
  return guarded([&] {
    require(form != nullptr && ranks != nullptr, "null argument");
    const auto r = form->form.decomposition.ranks();
    for (size_t i = 0; i < 6; ++i) ranks[i] = r[i];
  });
}

tpk_status tpk_halmos_reconstruct(const tpk_halmos *form, tpk_pair **out) {
  return guarded([&] {
    require(form != nullptr && out != nullptr, "null argument");
    auto [p, q] = tpk::reconstruct(form->form);
    *out = new tpk_pair{std::move(p), std::move(q)};
  });
}

tpk_status tpk_halmos_to_json(const tpk_halmos *form, char **out) {
  return guarded([&] {
    require(form != nullptr && out != nullptr, "null argument");
    *out = copy_string(tpk::json::halmos_form(form->form));
  });
}

void tpk_halmos_free(tpk_halmos *form) { delete form; }

tpk_status tpk_angle(const tpk_pair *pair, double *c, double *angle) {
  return guarded([&] {
    require(pair != nullptr && c != nullptr && angle != nullptr,
            "null argument");
    const tpk::AngleReport r = tpk::verify_norm_equation(pair->p, pair->q);
    *c = r.c_value;
    *angle = r.angle();
  });
}

tpk_status tpk_angle_report_json(const tpk_pair *pair, char **out) {
  return guarded([&] {
    require(pair != nullptr && out != nullptr, "null argument");
    *out = copy_string(
        tpk::json::angle_report(tpk::verify_norm_equation(pair->p, pair->q)));
  });
}

tpk_status tpk_resolvent_run(const tpk_pair *pair, double tol, int64_t n_max,
                             tpk_resolvent_trace **out) {
  return guarded([&] {
    require(pair != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    try {
      *out = new tpk_resolvent_trace{
          tpk::intersection_projector_iterative(pair->p, pair->q, tol, n_max)};
    } catch (const tpk::NoConvergence &e) {
      *out = new tpk_resolvent_trace{e.trace()};
      throw;
    }
  });
}

int tpk_resolvent_converged(const tpk_resolvent_trace *trace) {
  return trace && trace->trace.converged ? 1 : 0;
}

size_t tpk_resolvent_steps(const tpk_resolvent_trace *trace) {
  return trace ? trace->trace.steps.size() : 0;
}

tpk_status tpk_resolvent_projector(const tpk_resolvent_trace *trace,
                                   tpk_matrix **out) {
  return guarded([&] {
    require(trace != nullptr && out != nullptr, "null argument");
    *out = new tpk_matrix{trace->trace.final_projector.matrix()};
  });
}

tpk_status tpk_resolvent_csv(const tpk_resolvent_trace *trace, char **out) {
  return guarded([&] {
    require(trace != nullptr && out != nullptr, "null argument");
    *out = copy_string(tpk::json::resolvent_trace_csv(trace->trace));
  });
}

tpk_status tpk_resolvent_summary_json(const tpk_resolvent_trace *trace,
                                      char **out) {
  return guarded([&] {
    require(trace != nullptr && out != nullptr, "null argument");
    *out = copy_string(tpk::json::resolvent_summary(trace->trace));
  });
}

void tpk_resolvent_trace_free(tpk_resolvent_trace *trace) { delete trace; }

void tpk_verify_options_init(tpk_verify_options *options, const char *suite) {
  if (options == nullptr) return;
  const tpk::SuiteOptions d;
  options->suite = suite;
  options->dim = d.dim;
  options->trials = d.trials;
  options->seed = d.seed;
  options->tol_scale = d.tol_scale;
  options->fixture = nullptr;
  options->n_max = 0;
  options->resolvent_tol = 0.0;
  options->grids = nullptr;
  options->n_grids = 0;
  options->include_wall_time = 1;
}

size_t tpk_suite_count(void) { return tpk::suite_names().size(); }

const char *tpk_suite_name(size_t index) {
  const auto &names = tpk::suite_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

tpk_status tpk_verify(const tpk_verify_options *options, char **report_json,
                      int *passed) {
  return guarded([&] {
    require(options != nullptr && options->suite != nullptr &&
                report_json != nullptr && passed != nullptr,
            "null argument");
    tpk::SuiteOptions o;
    o.name = options->suite;
    o.dim = options->dim;
    o.trials = options->trials;
    o.seed = options->seed;
    o.tol_scale = options->tol_scale;
    if (options->fixture) {
      o.fixture.emplace(options->fixture->p, options->fixture->q);
    }
    if (options->n_max > 0) o.n_max = options->n_max;
    if (options->resolvent_tol > 0.0) o.resolvent_tol = options->resolvent_tol;
    if (options->grids != nullptr && options->n_grids > 0) {
      o.grids.assign(options->grids, options->grids + options->n_grids);
    }
    const tpk::SuiteReport r = tpk::run_suite(o);
    *passed = r.pass() ? 1 : 0;
    *report_json =
        copy_string(tpk::suite_report_json(r, options->include_wall_time != 0));
  });
}

tpk_status tpk_counterexample(const size_t *grids, size_t n_grids,
                              size_t trials, uint64_t seed, char **report_json,
                              int *passed) {
  return guarded([&] {
    require(report_json != nullptr && passed != nullptr, "null argument");
    tpk::cstar::CounterexampleOptions o;
    if (grids != nullptr && n_grids > 0) o.grids.assign(grids, grids + n_grids);
    o.trials = trials;
    o.seed = seed;
    const tpk::cstar::CounterexampleReport r = tpk::cstar::run_counterexample(o);
    *passed = r.pass() ? 1 : 0;
    *report_json = copy_string(tpk::json::counterexample_report(r));
  });
}

}  // extern "C"
