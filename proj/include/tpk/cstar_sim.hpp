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

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "tpk/linalg.hpp"

namespace tpk::cstar {

using Mat2 = Eigen::Matrix2cd;

/// Continuous, entrywise piecewise-linear function [0,1] -> M2(C), stored by
/// its node values.
class GridFunction {
 public:
  GridFunction() = default;
  /// Throws BadGrid unless nodes start at 0, end at 1, strictly increase,
  /// and values are finite and one per node.
  GridFunction(std::vector<double> nodes, std::vector<Mat2> values);

  static GridFunction uniform(std::size_t n_nodes,
                              const std::function<Mat2(double)> &fn);
  static GridFunction constant(std::size_t n_nodes, const Mat2 &value);
  /// The same grid with new values.
  GridFunction with_values(std::vector<Mat2> values) const;

  const std::vector<double> &nodes() const { return nodes_; }
  const std::vector<Mat2> &values() const { return values_; }
  std::size_t size() const { return nodes_.size(); }
  /// Linear interpolation between the bracketing nodes.
  Mat2 at(double t) const;

 private:
  std::vector<double> nodes_;
  std::vector<Mat2> values_;
};

/// Spectral norm of a 2x2 matrix in closed form.
double norm2(const Mat2 &m);
/// Singular values (descending) of a 2x2 matrix in closed form.
std::array<double, 2> singular_values2(const Mat2 &m);

/// max_t ||x(t)||. For a piecewise-linear function the node maximum is the
/// exact supremum, since the norm is convex along each segment.
double sup_norm(const GridFunction &x);
/// Node maximum plus lipschitz * (widest segment): a certified upper bound
/// on the supremum of a function with that Lipschitz constant sampled on
/// this grid.
double certified_sup_upper(const GridFunction &x, double lipschitz);

/// Node-wise product a(t) x(t) (the left-multiplication operator L_a).
GridFunction apply_left(const GridFunction &a, const GridFunction &x);
GridFunction add(const GridFunction &a, const GridFunction &b);
GridFunction subtract(const GridFunction &a, const GridFunction &b);

/// The constant projection diag(1, 0) and the rotating line projection
/// [[c^2, sc], [sc, s^2]] with c = cos(pi t / 2), s = sin(pi t / 2). Both
/// endpoints are exact.
Mat2 p_tilde_at(double t);
Mat2 q_tilde_at(double t);
Mat2 unit2();

struct ExampleOperators {
  GridFunction p_tilde;
  GridFunction q_tilde;
  std::size_t n_nodes = 0;
};

/// Throws BadGrid if n_nodes < 2.
ExampleOperators build_example(std::size_t n_nodes);

/// Which of (P, Q), (P, I-Q), (I-P, Q), (I-P, I-Q) to sum.
enum class Combination { kPQ, kPNotQ, kNotPQ, kNotPNotQ };
inline constexpr std::array<Combination, 4> kAllCombinations = {
    Combination::kPQ, Combination::kPNotQ, Combination::kNotPQ,
    Combination::kNotPNotQ};
const char *combination_name(Combination c);

/// Node values of the chosen sum of left multipliers.
GridFunction combination_sum(const ExampleOperators &ex, Combination c);

/// ||(P + Q) x - e|| for the chosen combination. Throws GridMismatch.
double distance_to_unit(const ExampleOperators &ex, const GridFunction &x,
                        Combination c = Combination::kPQ);

/// Node-wise least-squares solution of (P~(t) + Q~(t)) v = I.
GridFunction least_squares_adversary(const ExampleOperators &ex,
                                     Combination c = Combination::kPQ,
                                     const RankPolicy &policy = {});

struct KernelProbe {
  std::vector<int> pointwise_kernel_dims;  // per node, of P~(t)+Q~(t)
  /// sup ||(P+Q) x_h|| / ||x_h|| for the hat element x_h supported on
  /// [0, t1] with x_h(0) = [[0,0],[1,0]].
  double bump_ratio = 0.0;
};

/// The bump ratio is evaluated on the continuum: the exact operator
/// functions times the interpolated hat, sampled `subsamples` times across
/// the support segment.
KernelProbe kernel_probe(const ExampleOperators &ex,
                         const RankPolicy &policy = {},
                         std::size_t subsamples = 256);

/// Largest ||Q~(t_{k+1}) - Q~(t_k)||.
double max_adjacent_jump(const GridFunction &f);
/// Largest node residual of ||F^2 - F|| and ||F - F*|| over both operators.
double node_projection_residual(const ExampleOperators &ex);

/// Seeded random element; per-node complex Gaussian entries with a per-trial
/// scale drawn from {0.1, 1, 10}.
GridFunction random_element(std::size_t n_nodes, std::uint64_t seed);

struct CounterexampleOptions {
  std::vector<std::size_t> grids{65, 257, 1025};
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
};

struct GridResult {
  std::size_t n_nodes = 0;
  /// Minimum over random trials and the least-squares adversary, per
  /// combination in kAllCombinations order.
  std::array<double, 4> min_distance{};
  std::array<double, 4> adversary_distance{};
  double bump_ratio = 0.0;
  std::size_t kernel_nodes = 0;  // nodes with a nontrivial pointwise kernel
  std::vector<std::size_t> kernel_node_indices;
  double max_jump = 0.0;
  double jump_bound = 0.0;  // pi / (2 (n_nodes - 1)) * (1 + 1e-6)
  double node_residual = 0.0;
};

struct CounterexampleReport {
  std::vector<GridResult> grids;
  bool distance_ok = true;
  bool bump_decreasing = true;
  bool bump_small = true;  // finest grid bump ratio < 0.05
  bool continuity_ok = true;
  bool nodes_ok = true;
  bool pass() const {
    return distance_ok && bump_decreasing && bump_small && continuity_ok &&
           nodes_ok;
  }
};

inline constexpr double kDistanceSlack = 1e-12;
inline constexpr double kBumpLimit = 0.05;

/// Runs the distance lower-bound study over every grid (trials in parallel,
/// one derived seed per trial) plus the refinement study.
CounterexampleReport run_counterexample(const CounterexampleOptions &opts);

}  // namespace tpk::cstar
