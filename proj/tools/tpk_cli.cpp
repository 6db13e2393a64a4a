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

// tpk command-line front end. Talks to the library only through tpk.h.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tpk/tpk.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitError = 2;

struct CliError {
  tpk_status status;
  std::string message;
};

void check(tpk_status status) {
  if (status != TPK_OK) throw CliError{status, tpk_last_error()};
}

struct StringDeleter {
  void operator()(char *s) const { tpk_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct PairDeleter {
  void operator()(tpk_pair *p) const { tpk_pair_free(p); }
};
using OwnedPair = std::unique_ptr<tpk_pair, PairDeleter>;

std::string read_text(const std::string &path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{TPK_ERR_IO, "cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string &text, const std::string &path) {
  if (path.empty() || path == "-") {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError{TPK_ERR_IO, "cannot write '" + path + "'"};
  out << text << '\n';
  if (!out) throw CliError{TPK_ERR_IO, "write failed for '" + path + "'"};
}

OwnedPair load_pair(const std::string &path) {
  const std::string text = read_text(path);
  tpk_pair *pair = nullptr;
  check(tpk_pair_from_json(text.c_str(), &pair));
  return OwnedPair(pair);
}

struct GenArgs {
  int64_t dim = 16;
  int64_t rank_p = -1;
  int64_t rank_q = -1;
  int64_t shared = 0;
  uint64_t seed = 0;
  std::string out;
};

int run_gen(const GenArgs &a) {
  const int64_t rank_p = a.rank_p < 0 ? a.dim / 2 : a.rank_p;
  const int64_t rank_q = a.rank_q < 0 ? a.dim / 2 : a.rank_q;
  tpk_pair *raw = nullptr;
  check(tpk_pair_generate(a.dim, rank_p, rank_q, a.shared, a.seed, &raw));
  OwnedPair pair(raw);
  char *json = nullptr;
  check(tpk_pair_to_json(pair.get(), &json));
  emit(OwnedString(json).get(), a.out);
  return 0;
}

struct IoArgs {
  std::string input = "-";
  std::string out;
};

int run_decompose(const IoArgs &a) {
  OwnedPair pair = load_pair(a.input);
  tpk_halmos *form = nullptr;
  check(tpk_halmos_decompose(pair.get(), &form));
  char *json = nullptr;
  const tpk_status st = tpk_halmos_to_json(form, &json);
  tpk_halmos_free(form);
  check(st);
  emit(OwnedString(json).get(), a.out);
  return 0;
}

int run_angle(const IoArgs &a) {
  OwnedPair pair = load_pair(a.input);
  char *json = nullptr;
  check(tpk_angle_report_json(pair.get(), &json));
  emit(OwnedString(json).get(), a.out);
  return 0;
}

struct VerifyArgs {
  std::string suite;
  int64_t dim = 16;
  size_t trials = 100;
  uint64_t seed = 0;
  double tol = 1.0;
  std::string input;
  int64_t n_max = 0;
  double resolvent_tol = 0.0;
  std::vector<size_t> grids;
  bool no_wall_time = false;
  std::string out;
};

int run_verify(const VerifyArgs &a) {
  OwnedPair fixture;
  if (!a.input.empty()) fixture = load_pair(a.input);
  tpk_verify_options o;
  tpk_verify_options_init(&o, a.suite.c_str());
  o.dim = a.dim;
  o.trials = a.trials;
  o.seed = a.seed;
  o.tol_scale = a.tol;
  o.fixture = fixture.get();
  o.n_max = a.n_max;
  o.resolvent_tol = a.resolvent_tol;
  o.grids = a.grids.empty() ? nullptr : a.grids.data();
  o.n_grids = a.grids.size();
  o.include_wall_time = a.no_wall_time ? 0 : 1;
  char *json = nullptr;
  int passed = 0;
  check(tpk_verify(&o, &json, &passed));
  emit(OwnedString(json).get(), a.out);
  return passed ? 0 : kExitFailure;
}

struct ResolventArgs {
  std::string input = "-";
  int64_t n_max = int64_t{1} << 20;
  double tol = 1e-3;
  std::string trace;
  std::string projector_out;
};

int run_resolvent(const ResolventArgs &a) {
  OwnedPair pair = load_pair(a.input);
  tpk_resolvent_trace *trace = nullptr;
  const tpk_status st = tpk_resolvent_run(pair.get(), a.tol, a.n_max, &trace);
  const std::string message = tpk_last_error();
  if (trace == nullptr) throw CliError{st, message};
  std::unique_ptr<tpk_resolvent_trace, void (*)(tpk_resolvent_trace *)> owned(
      trace, tpk_resolvent_trace_free);

  if (!a.trace.empty()) {
    char *csv = nullptr;
    check(tpk_resolvent_csv(trace, &csv));
    OwnedString held(csv);
    std::ofstream out(a.trace, std::ios::binary);
    if (!out) throw CliError{TPK_ERR_IO, "cannot write '" + a.trace + "'"};
    out << held.get();
  }
  if (!a.projector_out.empty()) {
    tpk_matrix *m = nullptr;
    check(tpk_resolvent_projector(trace, &m));
    char *json = nullptr;
    const tpk_status js = tpk_matrix_to_json(m, &json);
    tpk_matrix_free(m);
    check(js);
    emit(OwnedString(json).get(), a.projector_out);
  }
  char *summary = nullptr;
  check(tpk_resolvent_summary_json(trace, &summary));
  std::cout << OwnedString(summary).get() << '\n';
  if (st != TPK_OK) throw CliError{st, message};
  return 0;
}

struct CounterexampleArgs {
  std::vector<size_t> grids{65, 257, 1025};
  size_t trials = 10000;
  uint64_t seed = 0;
  std::string report;
};

int run_counterexample(const CounterexampleArgs &a) {
  char *json = nullptr;
  int passed = 0;
  check(tpk_counterexample(a.grids.data(), a.grids.size(), a.trials, a.seed,
                           &json, &passed));
  emit(OwnedString(json).get(), a.report);
  std::cerr << (passed ? "counterexample: PASS" : "counterexample: FAIL")
            << '\n';
  return passed ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"tpk: numerical toolkit for pairs of orthogonal projections"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tpk_version());

  GenArgs gen;
  auto *gen_cmd = app.add_subcommand("gen", "Generate a seeded random projector pair");
  gen_cmd->add_option("--dim", gen.dim, "Ambient dimension")->capture_default_str();
  gen_cmd->add_option("--rank-p", gen.rank_p, "Rank of P (default dim/2)");
  gen_cmd->add_option("--rank-q", gen.rank_q, "Rank of Q (default dim/2)");
  gen_cmd->add_option("--shared", gen.shared, "Rank of R(P) ∩ R(Q)")
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Master seed")->capture_default_str();
  gen_cmd->add_option("-o,--out", gen.out, "Output path (default stdout)");

  IoArgs dec;
  auto *dec_cmd = app.add_subcommand("decompose", "Canonical form of a pair");
  dec_cmd->add_option("input", dec.input, "Pair JSON ('-' for stdin)");
  dec_cmd->add_option("-o,--out", dec.out, "Output path (default stdout)");

  IoArgs ang;
  auto *ang_cmd = app.add_subcommand("angle", "Friedrichs angle and norm identity report");
  ang_cmd->add_option("input", ang.input, "Pair JSON ('-' for stdin)");
  ang_cmd->add_option("-o,--out", ang.out, "Output path (default stdout)");

  VerifyArgs ver;
  auto *ver_cmd = app.add_subcommand("verify", "Run a verification suite");
  std::vector<std::string> suites;
  for (size_t i = 0; i < tpk_suite_count(); ++i) suites.emplace_back(tpk_suite_name(i));
  ver_cmd->add_option("--suite", ver.suite, "Suite name")
      ->required()
      ->check(CLI::IsMember(suites));
  ver_cmd->add_option("--dim", ver.dim, "Ambient dimension")->capture_default_str();
  ver_cmd->add_option("--trials", ver.trials, "Number of random pairs")
      ->capture_default_str();
  ver_cmd->add_option("--seed", ver.seed, "Master seed")->capture_default_str();
  ver_cmd->add_option("--tol", ver.tol, "Scale factor applied to every numeric tolerance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  ver_cmd->add_option("--input", ver.input, "Run once on this pair JSON instead of random pairs");
  ver_cmd->add_option("--n-max", ver.n_max, "Resolvent schedule bound");
  ver_cmd->add_option("--resolvent-tol", ver.resolvent_tol, "Resolvent stopping tolerance");
  ver_cmd->add_option("--grid", ver.grids, "Counterexample grid sizes");
  ver_cmd->add_flag("--no-wall-time", ver.no_wall_time, "Omit wall time from the report");
  ver_cmd->add_option("-o,--out", ver.out, "Output path (default stdout)");

  ResolventArgs res;
  auto *res_cmd = app.add_subcommand("resolvent", "Iterative projector onto R(P) ∩ R(Q)");
  res_cmd->add_option("input", res.input, "Pair JSON ('-' for stdin)");
  res_cmd->add_option("--n-max", res.n_max, "Largest n in the doubling schedule")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  res_cmd->add_option("--tol", res.tol, "Stopping tolerance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  res_cmd->add_option("--trace", res.trace, "Write the per-step trace as CSV");
  res_cmd->add_option("--projector", res.projector_out, "Write the final projector as JSON");

  CounterexampleArgs cex;
  auto *cex_cmd = app.add_subcommand("counterexample", "Grid study of the C([0,1]; M2) example");
  cex_cmd->add_option("--grid", cex.grids, "Grid node counts")->capture_default_str();
  cex_cmd->add_option("--trials", cex.trials, "Random elements per grid")
      ->capture_default_str();
  cex_cmd->add_option("--seed", cex.seed, "Master seed")->capture_default_str();
  cex_cmd->add_option("--report", cex.report, "Write the JSON report here (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*dec_cmd) return run_decompose(dec);
    if (*ang_cmd) return run_angle(ang);
    if (*ver_cmd) return run_verify(ver);
    if (*res_cmd) return run_resolvent(res);
    if (*cex_cmd) return run_counterexample(cex);
  } catch (const CliError &e) {
    std::cerr << "error: " << tpk_status_name(e.status) << ": " << e.message
              << '\n';
    return kExitError;
  }
  return kExitError;
}
