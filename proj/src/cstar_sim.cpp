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

#include "tpk/cstar_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "tpk/error.hpp"
#include "tpk/parallel.hpp"
#include "tpk/random.hpp"

namespace tpk::cstar {

namespace {

bool finite2(const Mat2 &m) {
  for (int i = 0; i < 4; ++i) {
    const Complex z = m(i % 2, i / 2);
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

void require_same_grid(const GridFunction &a, const GridFunction &b,
                       const char *what) {
  if (a.nodes() != b.nodes()) {
    throw Error(ErrorCode::kGridMismatch,
                std::string(what) + ": grid functions use different nodes");
  }
}

}  // namespace

GridFunction::GridFunction(std::vector<double> nodes, std::vector<Mat2> values)
    : nodes_(std::move(nodes)), values_(std::move(values)) {
  const auto fail = [](const std::string &why) {
    throw Error(ErrorCode::kBadGrid, "bad grid: " + why);
  };
  if (nodes_.size() < 2) fail("need at least two nodes");
  if (nodes_.size() != values_.size()) fail("one value per node required");
  if (nodes_.front() != 0.0 || nodes_.back() != 1.0) {
    fail("nodes must start at 0 and end at 1");
  }
  for (std::size_t k = 1; k < nodes_.size(); ++k) {
    if (!(nodes_[k] > nodes_[k - 1])) fail("nodes must strictly increase");
  }
  for (const Mat2 &v : values_) {
    if (!finite2(v)) fail("non-finite matrix entry");
  }
}

GridFunction GridFunction::uniform(std::size_t n_nodes,
                                   const std::function<Mat2(double)> &fn) {
  if (n_nodes < 2) {
    throw Error(ErrorCode::kBadGrid, "bad grid: need at least two nodes");
  }
  std::vector<double> nodes(n_nodes);
  std::vector<Mat2> values(n_nodes);
  const double segments = static_cast<double>(n_nodes - 1);
  for (std::size_t k = 0; k < n_nodes; ++k) {
    nodes[k] = k + 1 == n_nodes ? 1.0 : static_cast<double>(k) / segments;
    values[k] = fn(nodes[k]);
  }
  return GridFunction(std::move(nodes), std::move(values));
}

GridFunction GridFunction::constant(std::size_t n_nodes, const Mat2 &value) {
  return uniform(n_nodes, [&](double) { return value; });
}

GridFunction GridFunction::with_values(std::vector<Mat2> values) const {
  return GridFunction(nodes_, std::move(values));
}

Mat2 GridFunction::at(double t) const {
  if (t <= nodes_.front()) return values_.front();
  if (t >= nodes_.back()) return values_.back();
  const auto hi = std::upper_bound(nodes_.begin(), nodes_.end(), t);
  const std::size_t k = static_cast<std::size_t>(hi - nodes_.begin());
  const double t0 = nodes_[k - 1];
  const double t1 = nodes_[k];
  const double w = (t - t0) / (t1 - t0);
  return (1.0 - w) * values_[k - 1] + w * values_[k];
}

std::array<double, 2> singular_values2(const Mat2 &m) {
  const double fro2 = m.squaredNorm();
  const double det = std::abs(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
  // s1 + s2 = sqrt(F + 2|det|), s1 - s2 = sqrt(F - 2|det|).
  const double sum = std::sqrt(fro2 + 2.0 * det);
  const double diff = std::sqrt(std::max(0.0, fro2 - 2.0 * det));
  const double s1 = 0.5 * (sum + diff);
  const double s2 = s1 > 0.0 ? det / s1 : 0.0;
  return {s1, s2};
}

double norm2(const Mat2 &m) { return singular_values2(m)[0]; }

double sup_norm(const GridFunction &x) {
  double best = 0.0;
  for (const Mat2 &v : x.values()) best = std::max(best, norm2(v));
  return best;
}

double certified_sup_upper(const GridFunction &x, double lipschitz) {
  double widest = 0.0;
  for (std::size_t k = 1; k < x.size(); ++k) {
    widest = std::max(widest, x.nodes()[k] - x.nodes()[k - 1]);
  }
  return sup_norm(x) + lipschitz * widest;
}

GridFunction apply_left(const GridFunction &a, const GridFunction &x) {
  require_same_grid(a, x, "apply_left");
  std::vector<Mat2> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = a.values()[k] * x.values()[k];
  return x.with_values(std::move(out));
}

GridFunction add(const GridFunction &a, const GridFunction &b) {
  require_same_grid(a, b, "add");
  std::vector<Mat2> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a.values()[k] + b.values()[k];
  return a.with_values(std::move(out));
}

GridFunction subtract(const GridFunction &a, const GridFunction &b) {
  require_same_grid(a, b, "subtract");
  std::vector<Mat2> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a.values()[k] - b.values()[k];
  return a.with_values(std::move(out));
}

Mat2 unit2() { return Mat2::Identity(); }

Mat2 p_tilde_at(double /*t*/) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = 1.0;
  return m;
}

Mat2 q_tilde_at(double t) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  double c = 0.0;
  double s = 0.0;
  // Evaluate near whichever endpoint is closer so that t = 0 and t = 1 are
  // exact.
  if (t <= 0.5) {
    c = std::cos(half_pi * t);
    s = std::sin(half_pi * t);
  } else {
    c = std::sin(half_pi * (1.0 - t));
    s = std::cos(half_pi * (1.0 - t));
  }
  Mat2 m;
  m << c * c, s * c, s * c, s * s;
  return m;
}

ExampleOperators build_example(std::size_t n_nodes) {
  if (n_nodes < 2) {
    throw Error(ErrorCode::kBadGrid, "bad grid: need at least two nodes, got " +
                                         std::to_string(n_nodes));
  }
  return {GridFunction::uniform(n_nodes, p_tilde_at),
          GridFunction::uniform(n_nodes, q_tilde_at), n_nodes};
}

const char *combination_name(Combination c) {
  switch (c) {
    case Combination::kPQ: return "P+Q";
    case Combination::kPNotQ: return "P+(I-Q)";
    case Combination::kNotPQ: return "(I-P)+Q";
    case Combination::kNotPNotQ: return "(I-P)+(I-Q)";
  }
  return "?";
}

GridFunction combination_sum(const ExampleOperators &ex, Combination c) {
  const bool flip_p = c == Combination::kNotPQ || c == Combination::kNotPNotQ;
  const bool flip_q = c == Combination::kPNotQ || c == Combination::kNotPNotQ;
  std::vector<Mat2> out(ex.p_tilde.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const Mat2 &p = ex.p_tilde.values()[k];
    const Mat2 &q = ex.q_tilde.values()[k];
    out[k] = (flip_p ? Mat2(unit2() - p) : p) + (flip_q ? Mat2(unit2() - q) : q);
  }
  return ex.p_tilde.with_values(std::move(out));
}

namespace {

double distance_from_sum(const GridFunction &sum, const GridFunction &x) {
  double best = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    best = std::max(best, norm2(sum.values()[k] * x.values()[k] - unit2()));
  }
  return best;
}

}  // namespace

double distance_to_unit(const ExampleOperators &ex, const GridFunction &x,
                        Combination c) {
  require_same_grid(ex.p_tilde, x, "distance_to_unit");
  return distance_from_sum(combination_sum(ex, c), x);
}

GridFunction least_squares_adversary(const ExampleOperators &ex, Combination c,
                                     const RankPolicy &policy) {
  const GridFunction sum = combination_sum(ex, c);
  std::vector<Mat2> out(sum.size());
  for (std::size_t k = 0; k < sum.size(); ++k) {
    const CMatrix a = sum.values()[k];
    out[k] = pinv(a, policy);
  }
  return sum.with_values(std::move(out));
}

KernelProbe kernel_probe(const ExampleOperators &ex, const RankPolicy &policy,
                         std::size_t subsamples) {
  const GridFunction sum = combination_sum(ex, Combination::kPQ);
  KernelProbe out;
  out.pointwise_kernel_dims.reserve(sum.size());
  for (const Mat2 &v : sum.values()) {
    const auto sv = singular_values2(v);
    RVector s(2);
    s << sv[0], sv[1];
    out.pointwise_kernel_dims.push_back(2 - static_cast<int>(policy.rank_of(s)));
  }

  // Hat element: [[0,0],[1,0]] at t = 0, vanishing from the first interior
  // node on. Its sup norm is 1.
  const double t1 = ex.p_tilde.nodes()[1];
  Mat2 bump = Mat2::Zero();
  bump(1, 0) = 1.0;
  double best = 0.0;
  for (std::size_t j = 0; j <= subsamples; ++j) {
    const double t = t1 * static_cast<double>(j) / static_cast<double>(subsamples);
    const Mat2 a = p_tilde_at(t) + q_tilde_at(t);
    best = std::max(best, norm2(a * ((1.0 - t / t1) * bump)));
  }
  out.bump_ratio = best;
  return out;
}

double max_adjacent_jump(const GridFunction &f) {
  double best = 0.0;
  for (std::size_t k = 1; k < f.size(); ++k) {
    best = std::max(best, norm2(f.values()[k] - f.values()[k - 1]));
  }
  return best;
}

double node_projection_residual(const ExampleOperators &ex) {
  double worst = 0.0;
  for (const GridFunction *f : {&ex.p_tilde, &ex.q_tilde}) {
    for (const Mat2 &v : f->values()) {
      worst = std::max(worst, norm2(v * v - v));
      worst = std::max(worst, norm2(v - v.adjoint()));
    }
  }
  return worst;
}

GridFunction random_element(std::size_t n_nodes, std::uint64_t seed) {
  Rng rng(seed);
  static constexpr double kScales[3] = {0.1, 1.0, 10.0};
  std::uniform_int_distribution<int> pick(0, 2);
  const double scale = kScales[pick(rng)];
  std::normal_distribution<double> normal(0.0, scale);
  return GridFunction::uniform(n_nodes, [&](double) {
    Mat2 m;
    for (int i = 0; i < 4; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i % 2, i / 2) = Complex(re, im);
    }
    return m;
  });
}

CounterexampleReport run_counterexample(const CounterexampleOptions &opts) {
  CounterexampleReport report;
  for (const std::size_t n_nodes : opts.grids) {
    const ExampleOperators ex = build_example(n_nodes);
    std::array<GridFunction, 4> sums;
    for (std::size_t c = 0; c < 4; ++c) sums[c] = combination_sum(ex, kAllCombinations[c]);

    std::vector<std::array<double, 4>> per_trial(opts.trials);
    const std::uint64_t grid_seed = mix_seed(opts.seed, n_nodes);
    parallel_for(opts.trials, [&](std::size_t trial) {
      const GridFunction x = random_element(n_nodes, mix_seed(grid_seed, trial));
      for (std::size_t c = 0; c < 4; ++c) {
        per_trial[trial][c] = distance_from_sum(sums[c], x);
      }
    });

    GridResult g;
    g.n_nodes = n_nodes;
    for (std::size_t c = 0; c < 4; ++c) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto &row : per_trial) best = std::min(best, row[c]);
      const GridFunction adversary =
          least_squares_adversary(ex, kAllCombinations[c]);
      g.adversary_distance[c] = distance_from_sum(sums[c], adversary);
      g.min_distance[c] = std::min(best, g.adversary_distance[c]);
      if (g.min_distance[c] < 1.0 - kDistanceSlack) report.distance_ok = false;
    }

    const KernelProbe probe = kernel_probe(ex);
    g.bump_ratio = probe.bump_ratio;
    for (std::size_t k = 0; k < probe.pointwise_kernel_dims.size(); ++k) {
      if (probe.pointwise_kernel_dims[k] > 0) {
        ++g.kernel_nodes;
        g.kernel_node_indices.push_back(k);
      }
    }
    g.max_jump = max_adjacent_jump(ex.q_tilde);
    g.jump_bound = std::numbers::pi / (2.0 * static_cast<double>(n_nodes - 1)) *
                   (1.0 + 1e-6);
    if (g.max_jump > g.jump_bound) report.continuity_ok = false;
    g.node_residual = node_projection_residual(ex);
    if (g.node_residual >= 1e-12) report.nodes_ok = false;
    report.grids.push_back(std::move(g));
  }

  std::vector<const GridResult *> by_size;
  for (const GridResult &g : report.grids) by_size.push_back(&g);
  std::sort(by_size.begin(), by_size.end(),
            [](const GridResult *a, const GridResult *b) {
              return a->n_nodes < b->n_nodes;
            });
  for (std::size_t i = 1; i < by_size.size(); ++i) {
    if (!(by_size[i]->bump_ratio < by_size[i - 1]->bump_ratio)) {
      report.bump_decreasing = false;
    }
  }
  if (!by_size.empty() && !(by_size.back()->bump_ratio < kBumpLimit)) {
    report.bump_small = false;
  }
  return report;
}

}  // namespace tpk::cstar
