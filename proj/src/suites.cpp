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

#include "tpk/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>

#include "tpk/cstar_sim.hpp"
#include "tpk/error.hpp"
#include "tpk/friedrichs.hpp"
#include "tpk/halmos.hpp"
#include "tpk/json_io.hpp"
#include "tpk/parallel.hpp"
#include "tpk/random.hpp"

namespace tpk {

namespace {

constexpr std::size_t kMaxReportedErrors = 5;

struct ResidualDef {
  const char *name;
  double tolerance;
  bool scalable;
  bool enforced = true;
};

struct Trial {
  Projector p;
  Projector q;
  /// Orthonormal vectors known to lie in R(P)∩R(Q).
  CMatrix planted;
  bool generated = false;
};

using TrialFn = std::function<std::vector<double>(const Trial &)>;

struct SuiteDef {
  std::vector<ResidualDef> residuals;
  TrialFn run;
};

CMatrix concat_cols(const CMatrix &a, const CMatrix &b) {
  CMatrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

double projector_gap(const CMatrix &a, const CMatrix &b) {
  return spectral_norm(a - b);
}

CMatrix projector_of(const CMatrix &basis) { return basis * basis.adjoint(); }

std::vector<double> norm_eq_trial(const Trial &t) {
  const AngleReport r = verify_norm_equation(t.p, t.q);
  const double planted_mismatch =
      t.generated && r.intersection_rank != t.planted.cols() ? 1.0 : 0.0;
  return {std::abs(r.lhs_norm - r.rhs_norm), planted_mismatch};
}

std::vector<double> duality_trial(const Trial &t) {
  const AngleReport r = verify_norm_equation(t.p, t.q);
  return {r.duality_gap, std::abs(r.c_value - r.c_oracle)};
}

std::vector<double> lattice_trial(const Trial &t) {
  const CMatrix &pm = t.p.matrix();
  const CMatrix &qm = t.q.matrix();
  const std::ptrdiff_t d = t.p.dim();
  const CMatrix id = identity(d);
  const Projector not_p = t.p.complement();
  const Projector not_q = t.q.complement();

  const double sum_gap =
      gap(range_sum(t.p, t.q), SubspaceBasis(range_basis(concat_cols(pm, qm))));

  const CMatrix qp_range = range_basis(qm * pm);
  const double qp_gap = projector_gap(projection_onto_range_qp(t.p, t.q).matrix(),
                                      projector_of(qp_range));

  const auto [first, second] = range_qp_orthogonal_split(t.p, t.q);
  const double split_orth = first.rank() && second.rank()
                                ? spectral_norm(first.basis().adjoint() * second.basis())
                                : 0.0;
  const double split_span =
      projector_gap(projector_of(first.basis()) + projector_of(second.basis()),
                    projector_of(qp_range));

  const CMatrix formula = qm - project_onto(intersect_ranges(t.q, not_p)).matrix() -
                          project_onto(intersect_ranges(t.q, t.p)).matrix();
  const double corollary_gap =
      projector_gap(projector_of(range_basis(qm * pm * (id - qm))), formula);

  const Projector meet = project_onto(intersect_ranges(t.p, t.q));
  const double closed_sum_gap = projector_gap(
      project_onto(range_sum(not_p, not_q)).matrix(), id - meet.matrix());

  const CMatrix rest = hermitian_range_basis(2.0 * id - pm - qm, RankPolicy{});
  const double split_h = projector_gap(meet.matrix() + projector_of(rest), id);

  const auto ranks = six_space_decomposition(t.p, t.q).ranks();
  const bool rank_ok = ranks[0] + ranks[1] + ranks[4] == t.p.rank() &&
                       ranks[2] + ranks[3] + ranks[5] == d - t.p.rank();

  return {sum_gap,       qp_gap,         split_orth, split_span, corollary_gap,
          closed_sum_gap, split_h, rank_ok ? 0.0 : 1.0};
}

std::vector<double> halmos_trial(const Trial &t) {
  const HalmosForm form = halmos_decompose(t.p, t.q);
  const auto [p2, q2] = reconstruct(form);
  const double round_trip = std::max(gap(p2, t.p), gap(q2, t.q));

  const CMatrix u = build_intertwiner(form);
  double intertwine = 0.0;
  for (const std::int64_t n : {1, 10, 100, 10000}) {
    const AngleOperators ops = angle_operators(t.p, t.q, n);
    intertwine = std::max(
        intertwine, spectral_norm(u * ops.first * u.adjoint() - ops.second));
  }

  const auto &dec = form.decomposition;
  const std::ptrdiff_t d = t.p.dim();
  CMatrix sum = CMatrix::Zero(d, d);
  double cross = 0.0;
  for (std::size_t i = 0; i < 6; ++i) {
    sum += dec.projectors[i].matrix();
    for (std::size_t j = i + 1; j < 6; ++j) {
      cross = std::max(cross, spectral_norm(dec.projectors[i].matrix() *
                                            dec.projectors[j].matrix()));
    }
  }
  const double partition = std::max(
      {spectral_norm(sum - identity(d)), cross,
       spectral_norm(t.p.matrix() - dec.projectors[0].matrix() -
                     dec.projectors[1].matrix() - dec.projectors[4].matrix())});

  double u0_unitary = 0.0, q1_rel = 0.0, offdiag = 0.0, symmetry = 0.0,
         lemma46 = 0.0;
  if (!form.degenerate_generic_part) {
    const CMatrix &b5 = dec.spaces[4].basis();
    const CMatrix &b6 = dec.spaces[5].basis();
    const CMatrix &qm = t.q.matrix();
    const std::ptrdiff_t g = form.generic_rank();
    const CMatrix ig = identity(g);
    const CMatrix q1 = hermitian_part(b6.adjoint() * qm * b6);
    u0_unitary = spectral_norm(form.u0.adjoint() * form.u0 - ig);
    q1_rel = spectral_norm(q1 - form.u0.adjoint() * (ig - form.q0) * form.u0);
    offdiag = spectral_norm(b5.adjoint() * qm * b6 -
                            psd_sqrt(form.q0) * form.u0 * psd_sqrt(q1));
    const RVector a = hermitian_eigenvalues(form.q0);
    const RVector b = hermitian_eigenvalues(ig - q1);
    symmetry = (a - b).cwiseAbs().maxCoeff();

    const CMatrix p5 = dec.projectors[4].matrix();
    const CMatrix p6 = dec.projectors[5].matrix();
    const CMatrix qpq = range_basis(qm * t.p.matrix() * (identity(d) - qm));
    lemma46 = std::max({subspace_gap(range_basis(p5 * qm), b5),
                        subspace_gap(range_basis(p6 * qm), b6),
                        subspace_gap(range_basis(qm * p5), qpq),
                        subspace_gap(range_basis(qm * p6), qpq)});
  }
  return {round_trip, intertwine, partition, u0_unitary,
          q1_rel,     offdiag,    symmetry,  lemma46};
}

std::vector<double> predicates_trial(const Trial &t) {
  const PqPredicates r = pq_norm_predicates(t.p, t.q);
  const bool bicond =
      (r.norm_pq < 1.0 - kPredicateMargin) == r.trivial_intersection;
  return {bicond ? 0.0 : 1.0, r.gap_norm};
}

// Smallest nonzero eigenvalue of P + Q; infinity when P + Q = 0.
double smallest_positive_eigenvalue(const Projector &p, const Projector &q) {
  const CMatrix sum = hermitian_part(p.matrix() + q.matrix());
  const RVector ev = hermitian_eigenvalues(sum);
  const double cutoff = RankPolicy{}.cutoff(ev.cwiseAbs().maxCoeff());
  double lo = std::numeric_limits<double>::infinity();
  for (const double v : ev) {
    if (v > cutoff) lo = std::min(lo, v);
  }
  return lo;
}

std::vector<double> resolvent_trial(const Trial &t, double tol,
                                    std::int64_t n_max) {
  const CMatrix oracle = project_onto(intersect_ranges(t.p, t.q)).matrix();
  const CMatrix off_oracle = identity(t.p.dim()) - oracle;
  double gap_oracle = std::numeric_limits<double>::infinity();
  double no_conv = 0.0;
  try {
    const ResolventTrace trace =
        intersection_projector_iterative(t.p, t.q, tol, n_max);
    gap_oracle = projector_gap(trace.final_projector.matrix(), oracle);
  } catch (const NoConvergence &e) {
    no_conv = 1.0;
    gap_oracle = projector_gap(e.trace().final_projector.matrix(), oracle);
  }

  // Errors decay like 1/(n * lambda) with lambda the smallest nonzero
  // eigenvalue of P + Q; before n * lambda reaches 1 they may still grow.
  const double lambda = smallest_positive_eigenvalue(t.p, t.q);
  double max_norm_b = 0.0;
  double scalar_law = 0.0;
  double equal_rate = 0.0;
  double annihilation_rate = 0.0;
  double late_increase = 0.0;
  double previous_err = std::numeric_limits<double>::infinity();
  bool previous_settled = false;
  for (const std::int64_t n : geometric_schedule(n_max)) {
    const AbcSequences abc = abc_sequences(t.p, t.q, n);
    const CMatrix two_b = 2.0 * abc.b;
    max_norm_b = std::max(max_norm_b, spectral_norm(abc.b));
    for (Eigen::Index j = 0; j < t.planted.cols(); ++j) {
      const CVector x = t.planted.col(j);
      const double ratio = (two_b * x - x).norm() *
                           (2.0 * static_cast<double>(n) + 1.0) / x.norm();
      scalar_law = std::max(scalar_law, std::abs(ratio - 1.0));
    }
    const double err = spectral_norm(two_b - oracle);
    if (std::isfinite(lambda)) {
      const double scale = static_cast<double>(n) * lambda;
      equal_rate = std::max(equal_rate, scale * std::max(spectral_norm(abc.a - abc.b),
                                                         spectral_norm(abc.b - abc.c)));
      annihilation_rate =
          std::max(annihilation_rate, scale * spectral_norm(two_b * off_oracle));
      if (previous_settled) late_increase = std::max(late_increase, err - previous_err);
      previous_settled = scale >= 1.0;
    }
    previous_err = err;
  }
  return {gap_oracle,        max_norm_b,    scalar_law, equal_rate,
          annihilation_rate, late_increase, no_conv};
}

const std::vector<std::string> kSuiteNames = {
    "lattice", "norm-eq", "duality", "halmos",
    "resolvent", "predicates", "counterexample"};

SuiteDef make_suite(const SuiteOptions &o) {
  if (o.name == "norm-eq") {
    return {{{"norm_identity_abs_diff", 1e-10, true},
             {"planted_intersection_rank_mismatch", 1.0, false}},
            norm_eq_trial};
  }
  if (o.name == "duality") {
    return {{{"duality_gap", 1e-9, true}, {"c_minus_oracle", 1e-9, true}},
            duality_trial};
  }
  if (o.name == "lattice") {
    return {{{"range_sum_two_route_gap", 1e-9, true},
             {"qp_projection_formula_gap", 1e-9, true},
             {"qp_split_orthogonality", 1e-9, true},
             {"qp_split_span_gap", 1e-9, true},
             {"qp_not_q_projection_formula_gap", 1e-9, true},
             {"complement_sum_closed_range_gap", 1e-9, true},
             {"intersection_complement_split_gap", 1e-9, true},
             {"six_space_rank_violations", 1.0, false}},
            lattice_trial};
  }
  if (o.name == "halmos") {
    return {{{"round_trip_gap", 1e-8, true},
             {"intertwiner_residual", 1e-9, true},
             {"six_space_partition_residual", 1e-9, true},
             {"u0_unitarity", 1e-9, true},
             {"q1_relation", 1e-9, true},
             {"offdiagonal_identity", 1e-9, true},
             {"spectrum_symmetry", 1e-9, true},
             {"generic_range_identities_gap", 1e-9, true}},
            halmos_trial};
  }
  if (o.name == "predicates") {
    return {{{"biconditional_violations", 1.0, false},
             {"gap_norm", 1.0 - kPredicateMargin, false}},
            predicates_trial};
  }
  if (o.name == "resolvent") {
    const double tol = o.resolvent_tol;
    const std::int64_t n_max = o.n_max;
    return {{{"gap_to_oracle", 1e-8, true},
             {"max_norm_b", 1.0, false},
             {"scalar_law_deviation", 1e-9, true},
             {"equal_limit_rate_constant", 2.0, false},
             {"complement_annihilation_rate_constant", 2.0, false},
             {"settled_error_increase", 1e-12, true},
             {"schedule_exhausted", 1.0, false, false}},
            [tol, n_max](const Trial &t) { return resolvent_trial(t, tol, n_max); }};
  }
  throw Error(ErrorCode::kUnknownSuite, "unknown suite '" + o.name + "'");
}

SuiteReport run_counterexample_suite(const SuiteOptions &o) {
  cstar::CounterexampleOptions opts;
  opts.grids = o.grids;
  opts.trials = o.trials;
  opts.seed = o.seed;
  const cstar::CounterexampleReport r = cstar::run_counterexample(opts);

  double shortfall = 0.0, finest_bump = 0.0, max_jump_ratio = 0.0,
         node_residual = 0.0;
  std::size_t finest = 0;
  for (const cstar::GridResult &g : r.grids) {
    for (const double m : g.min_distance) shortfall = std::max(shortfall, 1.0 - m);
    if (g.n_nodes >= finest) {
      finest = g.n_nodes;
      finest_bump = g.bump_ratio;
    }
    max_jump_ratio = std::max(max_jump_ratio, g.max_jump / g.jump_bound);
    node_residual = std::max(node_residual, g.node_residual);
  }
  SuiteReport report;
  report.suite = o.name;
  report.trials = o.trials;
  const double s = o.tol_scale;
  report.residuals = {
      {"distance_to_unit_shortfall", shortfall, cstar::kDistanceSlack * s},
      {"finest_bump_ratio", finest_bump, cstar::kBumpLimit},
      {"bump_ratio_non_decrease", r.bump_decreasing ? 0.0 : 1.0, 1.0},
      {"adjacent_jump_over_bound", max_jump_ratio, 1.0},
      {"node_projection_residual", node_residual, 1e-12 * s},
  };
  return report;
}

}  // namespace

bool SuiteReport::pass() const {
  return std::all_of(residuals.begin(), residuals.end(),
                     [](const Residual &r) { return r.pass(); });
}

const std::vector<std::string> &suite_names() { return kSuiteNames; }

SuiteReport run_suite(const SuiteOptions &o) {
  const auto start = std::chrono::steady_clock::now();
  if (std::find(kSuiteNames.begin(), kSuiteNames.end(), o.name) ==
      kSuiteNames.end()) {
    throw Error(ErrorCode::kUnknownSuite, "unknown suite '" + o.name + "'");
  }
  if (!(o.tol_scale > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tolerance scale must be positive");
  }

  SuiteReport report;
  if (o.name == "counterexample") {
    report = run_counterexample_suite(o);
  } else {
    if (!o.fixture && o.dim < 1) {
      throw Error(ErrorCode::kInvalidSpec, "dim must be positive");
    }
    const SuiteDef def = make_suite(o);
    const std::size_t trials = o.fixture ? 1 : o.trials;
    const std::size_t width = def.residuals.size();
    std::vector<std::vector<double>> values(trials);
    std::vector<std::string> failed(trials);

    parallel_for(trials, [&](std::size_t i) {
      Trial t;
      if (o.fixture) {
        t.p = o.fixture->first;
        t.q = o.fixture->second;
        t.planted = intersect_ranges(t.p, t.q).basis();
      } else {
        const std::ptrdiff_t shared =
            o.shared_ranks.empty() ? 0 : o.shared_ranks[i % o.shared_ranks.size()];
        const PairSpec spec = random_pair_spec(o.dim, shared, mix_seed(o.seed, i));
        std::tie(t.p, t.q) = generate_pair(spec);
        t.planted = identity(o.dim).leftCols(spec.shared_rank);
        t.generated = true;
      }
      try {
        values[i] = def.run(t);
      } catch (const Error &e) {
        failed[i] = std::string(error_code_name(e.code())) + ": " + e.what();
        values[i].assign(width, 0.0);
      }
    });

    report.suite = o.name;
    report.trials = trials;
    for (std::size_t k = 0; k < width; ++k) {
      const ResidualDef &rd = def.residuals[k];
      Residual r{rd.name, 0.0,
                 rd.scalable ? rd.tolerance * o.tol_scale : rd.tolerance,
                 rd.enforced};
      for (const auto &row : values) r.max_value = std::max(r.max_value, row[k]);
      report.residuals.push_back(r);
    }
    std::size_t errors = 0;
    for (std::size_t i = 0; i < trials; ++i) {
      if (failed[i].empty()) continue;
      if (++errors <= kMaxReportedErrors) {
        report.errors.push_back("trial " + std::to_string(i) + ": " + failed[i]);
      }
    }
    report.residuals.push_back(
        {"trial_errors", static_cast<double>(errors), 1.0});
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string suite_report_json(const SuiteReport &report, bool include_wall_time) {
  std::vector<std::string> residuals;
  for (const Residual &r : report.residuals) {
    residuals.push_back(json::Object()
                            .add("name", r.name)
                            .add("max_residual", r.max_value)
                            .add("tolerance", r.tolerance)
                            .add("pass", r.within())
                            .add("enforced", r.enforced)
                            .str());
  }
  json::Object out;
  out.add("suite", report.suite)
      .add("trials", report.trials)
      .add_raw("residuals", json::array(residuals));
  std::vector<std::string> errors;
  for (const std::string &e : report.errors) errors.push_back(json::quote(e));
  out.add_raw("errors", json::array(errors))
      .add("pass", report.pass());
  if (include_wall_time) out.add("wall_time_s", report.wall_seconds);
  return out.str();
}

}  // namespace tpk
