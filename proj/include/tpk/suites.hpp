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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tpk/resolvent.hpp"
#include "tpk/subspaces.hpp"

namespace tpk {

/// One named invariant: the worst value seen across trials and the bound it
/// must stay strictly below. Informational entries are reported but never
/// fail the suite.
struct Residual {
  std::string name;
  double max_value = 0.0;
  double tolerance = 0.0;
  bool enforced = true;
  bool within() const { return max_value < tolerance; }
  bool pass() const { return !enforced || within(); }
};

struct SuiteReport {
  std::string suite;
  std::size_t trials = 0;
  std::vector<Residual> residuals;
  /// Messages of the first few trials that raised an error.
  std::vector<std::string> errors;
  double wall_seconds = 0.0;
  bool pass() const;
};

struct SuiteOptions {
  std::string name;
  std::ptrdiff_t dim = 16;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  /// Multiplies every numeric tolerance; structural bounds (counts, the
  /// strict "< 1" contractions) are unaffected.
  double tol_scale = 1.0;
  /// Cycled through across trials; clipped to dim.
  std::vector<std::ptrdiff_t> shared_ranks{0, 1, 3};
  /// When set, every trial uses this pair and trials is forced to 1.
  std::optional<std::pair<Projector, Projector>> fixture;
  std::int64_t n_max = kDefaultNMax;
  double resolvent_tol = kDefaultResolventTol;
  /// Grid node counts for the counterexample suite.
  std::vector<std::size_t> grids{65, 257, 1025};
};

/// Names accepted by run_suite.
const std::vector<std::string> &suite_names();

/// Throws UnknownSuite for an unrecognized name.
SuiteReport run_suite(const SuiteOptions &options);

/// JSON rendering; wall time is the only non-deterministic field and is
/// omitted when `include_wall_time` is false.
std::string suite_report_json(const SuiteReport &report,
                              bool include_wall_time = true);

}  // namespace tpk
