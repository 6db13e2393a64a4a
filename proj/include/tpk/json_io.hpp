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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tpk/cstar_sim.hpp"
#include "tpk/friedrichs.hpp"
#include "tpk/halmos.hpp"
#include "tpk/resolvent.hpp"

// Shared file formats. Matrices are {"rows": r, "cols": c, "data":
// [[re, im], ...]} in row-major order; every number is written with 17
// significant digits.
namespace tpk::json {

/// "%.17g"; throws InvalidArgument for non-finite values.
std::string number(double v);
std::string quote(std::string_view s);

/// Insertion-ordered JSON object writer.
class Object {
 public:
  Object &add(std::string_view key, double v);
  Object &add(std::string_view key, std::int64_t v);
  Object &add(std::string_view key, int v) { return add(key, std::int64_t{v}); }
  Object &add(std::string_view key, std::size_t v) {
    return add(key, static_cast<std::int64_t>(v));
  }
  Object &add(std::string_view key, bool v);
  Object &add(std::string_view key, const char *v);
  Object &add(std::string_view key, const std::string &v);
  /// `raw` must already be valid JSON.
  Object &add_raw(std::string_view key, std::string raw);
  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

std::string array(const std::vector<std::string> &raw_items);

std::string matrix(const CMatrix &m);
/// Throws ParseError on malformed input.
CMatrix parse_matrix(std::string_view text);

/// {"p": matrix, "q": matrix}
std::string pair(const Projector &p, const Projector &q);
/// Certifies both matrices as projectors.
std::pair<Projector, Projector> parse_pair(std::string_view text);

std::string six_space(const SixSpaceDecomposition &dec);
std::string halmos_form(const HalmosForm &form);
std::string angle_report(const AngleReport &report);
std::string counterexample_report(const cstar::CounterexampleReport &report);

/// CSV with header n,err_to_oracle,diff_ab,diff_bc,norm_b.
std::string resolvent_trace_csv(const ResolventTrace &trace);
std::string resolvent_summary(const ResolventTrace &trace);

std::string read_file(const std::string &path);
void write_file(const std::string &path, std::string_view content);

}  // namespace tpk::json
