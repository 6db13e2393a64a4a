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

#include "tpk/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tpk/error.hpp"
#include "tpk/subspaces.hpp"

namespace tpk::json {

std::string number(double v) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::kInvalidArgument, "cannot write a non-finite number");
  }
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote(std::string_view s) {
  return nlohmann::json(std::string(s)).dump();
}

Object &Object::add(std::string_view key, double v) {
  return add_raw(key, number(v));
}

Object &Object::add(std::string_view key, std::int64_t v) {
  return add_raw(key, std::to_string(v));
}

Object &Object::add(std::string_view key, bool v) {
  return add_raw(key, v ? "true" : "false");
}

Object &Object::add(std::string_view key, const char *v) {
  return add_raw(key, quote(v));
}

Object &Object::add(std::string_view key, const std::string &v) {
  return add_raw(key, quote(v));
}

Object &Object::add_raw(std::string_view key, std::string raw) {
  fields_.emplace_back(quote(key), std::move(raw));
  return *this;
}

std::string Object::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    if (i) out += ", ";
    out += fields_[i].first;
    out += ": ";
    out += fields_[i].second;
  }
  out += "}";
  return out;
}

std::string array(const std::vector<std::string> &items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  out += "]";
  return out;
}

std::string matrix(const CMatrix &m) {
  std::vector<std::string> entries;
  entries.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      entries.push_back("[" + number(m(i, j).real()) + ", " +
                        number(m(i, j).imag()) + "]");
    }
  }
  return Object()
      .add("rows", static_cast<std::int64_t>(m.rows()))
      .add("cols", static_cast<std::int64_t>(m.cols()))
      .add_raw("data", array(entries))
      .str();
}

namespace {

[[noreturn]] void parse_fail(const std::string &why) {
  throw Error(ErrorCode::kParseError, "malformed JSON: " + why);
}

nlohmann::json parse_text(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    parse_fail(e.what());
  }
}

CMatrix matrix_from(const nlohmann::json &j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("data")) {
    parse_fail("matrix needs rows, cols and data");
  }
  const auto &rows_j = j.at("rows");
  const auto &cols_j = j.at("cols");
  if (!rows_j.is_number_integer() || !cols_j.is_number_integer()) {
    parse_fail("rows and cols must be integers");
  }
  const std::int64_t rows = rows_j.get<std::int64_t>();
  const std::int64_t cols = cols_j.get<std::int64_t>();
  if (rows < 0 || cols < 0) parse_fail("negative matrix shape");
  const auto &data = j.at("data");
  if (!data.is_array() || static_cast<std::int64_t>(data.size()) != rows * cols) {
    parse_fail("data must hold rows * cols entries");
  }
  CMatrix m(rows, cols);
  for (std::int64_t k = 0; k < rows * cols; ++k) {
    const auto &e = data[static_cast<std::size_t>(k)];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      parse_fail("each entry must be [re, im]");
    }
    m(k / cols, k % cols) = Complex(e[0].get<double>(), e[1].get<double>());
  }
  if (!is_finite(m)) parse_fail("non-finite matrix entry");
  return m;
}

}  // namespace

CMatrix parse_matrix(std::string_view text) { return matrix_from(parse_text(text)); }

std::string pair(const Projector &p, const Projector &q) {
  return Object()
      .add_raw("p", matrix(p.matrix()))
      .add_raw("q", matrix(q.matrix()))
      .str();
}

std::pair<Projector, Projector> parse_pair(std::string_view text) {
  const nlohmann::json j = parse_text(text);
  if (!j.is_object() || !j.contains("p") || !j.contains("q")) {
    parse_fail("pair needs \"p\" and \"q\"");
  }
  Projector p = Projector::certify(matrix_from(j.at("p")));
  Projector q = Projector::certify(matrix_from(j.at("q")));
  require_same_dim(p, q, "parse_pair");
  return {std::move(p), std::move(q)};
}

namespace {

std::string ranks_array(const std::array<std::ptrdiff_t, 6> &r) {
  std::vector<std::string> items;
  for (const auto v : r) items.push_back(std::to_string(v));
  return array(items);
}

}  // namespace

std::string six_space(const SixSpaceDecomposition &dec) {
  std::vector<std::string> bases;
  for (const SubspaceBasis &s : dec.spaces) bases.push_back(matrix(s.basis()));
  return Object()
      .add_raw("ranks", ranks_array(dec.ranks()))
      .add_raw("bases", array(bases))
      .str();
}

std::string halmos_form(const HalmosForm &form) {
  return Object()
      .add_raw("ranks", ranks_array(form.decomposition.ranks()))
      .add("degenerate_generic_part", form.degenerate_generic_part)
      .add_raw("u_pq", matrix(form.u_pq))
      .add_raw("q0", matrix(form.q0))
      .add_raw("u0", matrix(form.u0))
      .add_raw("decomposition", six_space(form.decomposition))
      .str();
}

std::string angle_report(const AngleReport &r) {
  return Object()
      .add("c_value", r.c_value)
      .add("c_oracle", r.c_oracle)
      .add("c_complement", r.c_complement)
      .add("angle", r.angle())
      .add("lhs_norm", r.lhs_norm)
      .add("rhs_norm", r.rhs_norm)
      .add("duality_gap", r.duality_gap)
      .add("intersection_rank", static_cast<std::int64_t>(r.intersection_rank))
      .add("kernel_intersection_rank",
           static_cast<std::int64_t>(r.kernel_intersection_rank))
      .str();
}

std::string counterexample_report(const cstar::CounterexampleReport &report) {
  std::vector<std::string> grids;
  for (const cstar::GridResult &g : report.grids) {
    Object min_distance;
    Object adversary;
    for (std::size_t c = 0; c < 4; ++c) {
      const char *name = cstar::combination_name(cstar::kAllCombinations[c]);
      min_distance.add(name, g.min_distance[c]);
      adversary.add(name, g.adversary_distance[c]);
    }
    std::vector<std::string> kernel_nodes;
    for (const std::size_t k : g.kernel_node_indices) {
      kernel_nodes.push_back(std::to_string(k));
    }
    grids.push_back(Object()
                        .add("grid", g.n_nodes)
                        .add_raw("min_distance_to_unit", min_distance.str())
                        .add_raw("least_squares_distance", adversary.str())
                        .add("bump_ratio", g.bump_ratio)
                        .add("nodes_with_pointwise_kernel", g.kernel_nodes)
                        .add_raw("pointwise_kernel_node_indices", array(kernel_nodes))
                        .add("max_adjacent_jump", g.max_jump)
                        .add("jump_bound", g.jump_bound)
                        .add("node_projection_residual", g.node_residual)
                        .str());
  }
  return Object()
      .add_raw("grids", array(grids))
      .add("distance_ok", report.distance_ok)
      .add("bump_decreasing", report.bump_decreasing)
      .add("bump_small", report.bump_small)
      .add("continuity_ok", report.continuity_ok)
      .add("nodes_ok", report.nodes_ok)
      .add("pass", report.pass())
      .str();
}

std::string resolvent_trace_csv(const ResolventTrace &trace) {
  std::string out = "n,err_to_oracle,diff_ab,diff_bc,norm_b\n";
  for (const ResolventStep &s : trace.steps) {
    out += std::to_string(s.n) + "," + number(s.err_to_oracle) + "," +
           number(s.diff_ab) + "," + number(s.diff_bc) + "," +
           number(s.norm_b) + "\n";
  }
  return out;
}

std::string resolvent_summary(const ResolventTrace &trace) {
  const ResolventStep last = trace.steps.empty() ? ResolventStep{} : trace.steps.back();
  return Object()
      .add("converged", trace.converged)
      .add("steps", trace.steps.size())
      .add("final_n", last.n)
      .add("final_err_to_oracle", last.err_to_oracle)
      .add("final_step_diff", last.step_diff)
      .add("monotone_from_step", trace.monotone_from)
      .add("rank", static_cast<std::int64_t>(trace.final_projector.rank()))
      .add_raw("projector", matrix(trace.final_projector.matrix()))
      .str();
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string &path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path);
}

}  // namespace tpk::json
