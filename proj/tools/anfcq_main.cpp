// Copyright 2026 The anfcq Authors
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


// anfcq: command-line front end.

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "anfcq/problem_file.hpp"
#include "anfcq/report.hpp"
#include "anfcq/transforms.hpp"

namespace fs = std::filesystem;
using anfcq::report::Json;

namespace {

constexpr int kUsageError = 3;

struct Common {
  std::string file;
  std::string point;
  std::string out;
  bool table = false;
  bool recheck = false;
  int depth_cap = 32;
};

void add_common(CLI::App* cmd, Common& c, bool needs_point = true) {
  cmd->add_option("problem", c.file, "problem file (JSON)")->required()->check(CLI::ExistingFile);
  if (needs_point) cmd->add_option("--point", c.point, "smooth variables t, comma separated rationals");
  cmd->add_option("--out", c.out, "write the report to this path instead of stdout");
  cmd->add_flag("--table", c.table, "plain text summary instead of JSON");
  if (needs_point) {
    cmd->add_flag("--recheck", c.recheck, "re-validate every certificate in the report");
    cmd->add_option("--depth-cap", c.depth_cap, "recursion cap of the cover search")->check(CLI::PositiveNumber);
  }
}

bool use_color(const std::string& out) { return out.empty() && std::getenv("NO_COLOR") == nullptr && isatty(1); }

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << text;
}

std::vector<anfcq::ProblemPoint> select_points(const anfcq::ProblemFile& pf, const std::string& spec) {
  if (spec.empty()) {
    if (pf.points.empty()) throw CLI::ValidationError("--point", "the problem file lists no points; pass --point");
    return pf.points;
  }
  anfcq::RatVector t;
  try {
    t = anfcq::parse_point_list(spec);
  } catch (const std::exception& e) {
    throw CLI::ValidationError("--point", e.what());
  }
  if (t.size() != pf.program.n_t)
    throw CLI::ValidationError("--point", "expected " + std::to_string(pf.program.n_t) + " coordinates, got " +
                                              std::to_string(t.size()));
  for (const auto& p : pf.points)
    if (p.t == t) return {p};
  anfcq::ProblemPoint p;
  p.label = "point";
  p.t = t;
  return {p};
}

std::string status_word(int code) { return code == 0 ? "holds" : code == 1 ? "fails" : "unknown"; }

// Serializes, optionally rechecks, and writes a point report. Returns the exit code.
int finish(const anfcq::ProblemFile& pf, const std::string& command, const std::vector<anfcq::report::PointOutcome>& outs,
           const Common& c) {
  Json rep;
  rep["tool"] = anfcq::report::tool_header();
  rep["command"] = command;
  rep["problem"] = anfcq::report::problem_header(pf);
  rep["points"] = Json::array();
  for (const auto& o : outs) rep["points"].push_back(o.json);
  const int code = anfcq::report::exit_code(outs);
  rep["summary"] = {{"status", status_word(code)}, {"exit_code", code}};
  const std::string text = rep.dump(2) + "\n";
  if (c.recheck) {
    std::vector<std::string> failures;
    if (!anfcq::report::recheck_points(pf, Json::parse(text)["points"], failures)) {
      for (const auto& f : failures) std::cerr << "recheck: " << f << "\n";
      emit(c.table ? anfcq::report::render_table(rep, use_color(c.out)) : text, c.out);
      return 1;
    }
    std::cerr << "recheck: all certificates verified\n";
  }
  emit(c.table ? anfcq::report::render_table(rep, use_color(c.out)) : text, c.out);
  return code;
}

int run_points(const Common& c, const std::string& command, anfcq::report::Sections s) {
  const anfcq::ProblemFile pf = anfcq::parse_problem(c.file);
  s.cover_depth_cap = c.depth_cap;
  std::vector<anfcq::report::PointOutcome> outs;
  for (const auto& pt : select_points(pf, c.point)) outs.push_back(anfcq::report::run_point(pf, pt, s));
  return finish(pf, command, outs, c);
}

int corpus_run(const std::string& dir, const std::string& out, bool table, bool recheck) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && entry.path().extension() == ".json" &&
        name.find(".schema.") == std::string::npos)
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw CLI::ValidationError("--dir", "no problem files in " + dir);

  anfcq::report::Sections s;
  s.analysis = true;
  s.cq = {"akq", "gkq", "mpcc-acq", "mpcc-gcq", "branches"};
  s.relations = true;
  s.m_stat = s.b_stat = true;
  s.expected = true;

  Json rep;
  rep["tool"] = anfcq::report::tool_header();
  rep["command"] = "corpus run";
  rep["files"] = Json::array();
  bool ok = true, rechecked = true;
  std::size_t npoints = 0, nmismatch = 0;
  std::vector<std::string> failures;
  for (const auto& f : files) {
    const anfcq::ProblemFile pf = anfcq::parse_problem(f.string());
    Json fj;
    fj["problem"] = anfcq::report::problem_header(pf);
    fj["points"] = Json::array();
    for (const auto& pt : pf.points) {
      const auto o = anfcq::report::run_point(pf, pt, s);
      ++npoints;
      if (!o.expected_ok) ++nmismatch;
      ok = ok && o.expected_ok && o.consistent;
      fj["points"].push_back(o.json);
    }
    if (recheck) rechecked = anfcq::report::recheck_points(pf, Json::parse(fj["points"].dump()), failures) && rechecked;
    rep["files"].push_back(fj);
  }
  const int code = ok && rechecked ? 0 : 1;
  rep["summary"] = {{"files", files.size()},
                    {"points", npoints},
                    {"mismatched_points", nmismatch},
                    {"status", ok ? "holds" : "fails"},
                    {"exit_code", code}};
  for (const auto& m : failures) std::cerr << "recheck: " << m << "\n";
  if (recheck && rechecked) std::cerr << "recheck: all certificates verified\n";
  emit(table ? anfcq::report::render_table(rep, use_color(out)) : rep.dump(2) + "\n", out);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact constraint qualification and stationarity checks for abs-normal NLPs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(anfcq::report::kToolVersion));

  Common c_eval, c_br, c_ref, c_cones, c_cq, c_st, c_rel;
  auto* eval_cmd = app.add_subcommand("eval", "solve the switching system and report signature and active sets");
  add_common(eval_cmd, c_eval);
  auto* br_cmd = app.add_subcommand("branches", "list the branch problems of all four formulations");
  add_common(br_cmd, c_br);

  auto* ref_cmd = app.add_subcommand("reformulate", "print the slack, counterpart or slack counterpart program");
  add_common(ref_cmd, c_ref, false);
  bool r_slack = false, r_mpcc = false, r_slack_mpcc = false;
  auto* o_slack = ref_cmd->add_flag("--slack", r_slack, "slack reformulation");
  auto* o_mpcc = ref_cmd->add_flag("--mpcc", r_mpcc, "counterpart with complementarity constraints");
  auto* o_smpcc = ref_cmd->add_flag("--slack-mpcc", r_slack_mpcc, "counterpart of the slack reformulation");
  o_slack->excludes(o_mpcc)->excludes(o_smpcc);
  o_mpcc->excludes(o_smpcc);

  auto* cones_cmd = app.add_subcommand("cones", "linearized and tangent cones of every formulation and branch");
  add_common(cones_cmd, c_cones);
  bool dual = false;
  cones_cmd->add_flag("--dual", dual, "include dual cones");

  auto* cq_cmd = app.add_subcommand("check-cq", "decide the kink and counterpart constraint qualifications");
  add_common(cq_cmd, c_cq);
  bool q_all = false, q_akq = false, q_gkq = false, q_macq = false, q_mgcq = false, q_br = false;
  cq_cmd->add_flag("--all", q_all, "every check (default)");
  cq_cmd->add_flag("--akq", q_akq, "abs-normal Abadie kink qualification");
  cq_cmd->add_flag("--gkq", q_gkq, "abs-normal Guignard kink qualification");
  cq_cmd->add_flag("--mpcc-acq", q_macq, "counterpart Abadie condition");
  cq_cmd->add_flag("--mpcc-gcq", q_mgcq, "counterpart Guignard condition");
  cq_cmd->add_flag("--branches", q_br, "Abadie and Guignard conditions of each branch problem");

  auto* st_cmd = app.add_subcommand("check-stationarity", "decide M- and B-stationarity");
  add_common(st_cmd, c_st);
  bool s_m = false, s_b = false;
  std::string form;
  st_cmd->add_flag("--m", s_m, "M-stationarity");
  st_cmd->add_flag("--b", s_b, "linearized B-stationarity");
  st_cmd->add_option("--form", form, "anf or mpcc (default both)")->check(CLI::IsMember({"anf", "mpcc"}));

  auto* rel_cmd = app.add_subcommand("verify-relations", "check every implication between the conditions");
  add_common(rel_cmd, c_rel);

  auto* corpus_cmd = app.add_subcommand("corpus", "bundled verification corpus");
  corpus_cmd->require_subcommand(1);
  auto* run_cmd = corpus_cmd->add_subcommand("run", "run every corpus problem and compare with its expectations");
  std::string dir = ANFCQ_DEFAULT_CORPUS_DIR, corpus_out;
  bool corpus_json = false, corpus_recheck = false;
  run_cmd->add_option("--dir", dir, "corpus directory")->check(CLI::ExistingDirectory);
  run_cmd->add_option("--out", corpus_out, "write the report to this path");
  run_cmd->add_flag("--json", corpus_json, "full JSON report instead of the table");
  run_cmd->add_flag("--recheck", corpus_recheck, "re-validate every certificate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsageError;
  }

  try {
    anfcq::report::Sections s;
    if (*eval_cmd) return run_points(c_eval, "eval", s);
    if (*br_cmd) {
      s.branches = true;
      return run_points(c_br, "branches", s);
    }
    if (*ref_cmd) {
      const anfcq::ProblemFile pf = anfcq::parse_problem(c_ref.file);
      Json rep;
      rep["tool"] = anfcq::report::tool_header();
      rep["problem"] = anfcq::report::problem_header(pf);
      if (r_mpcc) {
        rep["command"] = "reformulate --mpcc";
        rep["mpcc"] = anfcq::report::mpcc(anfcq::to_mpcc(pf.program));
      } else if (r_slack_mpcc) {
        rep["command"] = "reformulate --slack-mpcc";
        rep["mpcc"] = anfcq::report::mpcc(anfcq::to_mpcc(anfcq::to_slack(pf.program).lifted));
      } else {
        rep["command"] = "reformulate --slack";
        rep["program"] = anfcq::report::program(anfcq::to_slack(pf.program).lifted);
      }
      emit(rep.dump(2) + "\n", c_ref.out);
      return 0;
    }
    if (*cones_cmd) {
      s.analysis = true;
      s.dual = dual;
      return run_points(c_cones, "cones", s);
    }
    if (*cq_cmd) {
      s.analysis = true;
      if (q_akq) s.cq.push_back("akq");
      if (q_gkq) s.cq.push_back("gkq");
      if (q_macq) s.cq.push_back("mpcc-acq");
      if (q_mgcq) s.cq.push_back("mpcc-gcq");
      if (q_br) s.cq.push_back("branches");
      if (q_all || s.cq.empty()) s.cq = {"akq", "gkq", "mpcc-acq", "mpcc-gcq", "branches"};
      return run_points(c_cq, "check-cq", s);
    }
    if (*st_cmd) {
      s.m_stat = s_m || !s_b;
      s.b_stat = s_b || !s_m;
      if (form == "anf") s.stat_forms = {anfcq::report::StatForm::Anf};
      if (form == "mpcc") s.stat_forms = {anfcq::report::StatForm::Mpcc};
      return run_points(c_st, "check-stationarity", s);
    }
    if (*rel_cmd) {
      s.analysis = true;
      s.cq = {"akq", "gkq", "mpcc-acq", "mpcc-gcq"};
      s.relations = true;
      return run_points(c_rel, "verify-relations", s);
    }
    if (*run_cmd) return corpus_run(dir, corpus_out, !corpus_json, corpus_recheck);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const anfcq::ProblemParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const anfcq::InfeasibleAnchorError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const anfcq::BranchLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return kUsageError;
}
