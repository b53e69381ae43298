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


#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "anfcq/cq.hpp"
#include "anfcq/problem_file.hpp"
#include "anfcq/stationarity.hpp"

namespace anfcq::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "anfcq";
inline constexpr const char* kToolVersion = "0.1.0";

std::string sha256_hex(const std::string& bytes);

// Serialization. Rationals are canonical strings, indices are 1-based.
Json rat(const Rational& r);
Json vec(const RatVector& v);
Json cone(const PolyCone& c, bool with_generators = true);
Json union_cone(const UnionCone& u);
Json quad(const QuadraticFunc& q);
Json program(const AbsNormalProgram& p);
Json mpcc(const MpccProgram& mp);
Json branch_problem(const SmoothBranchProblem& b);
Json eval_summary(const EvalResult& e);
Json cover_tree(const CoverTree& t);
Json cq_verdict(const CQVerdict& v);
Json formulation(const FormulationAnalysis& f, bool dual);
Json relations(const RelationReport& r);
Json multipliers(const MultiplierSet& m);
Json stationarity(const StationarityVerdict& v);

Rational read_rat(const Json& j);
RatVector read_vec(const Json& j);
PolyCone read_cone(const Json& j);
CoverTree read_tree(const Json& j);

enum class StatForm { Anf, Mpcc };

// What a point report contains.
struct Sections {
  bool eval = true;
  bool branches = false;
  bool analysis = false;  // cones of every formulation
  bool dual = false;
  std::vector<std::string> cq;  // subset of: akq gkq mpcc-acq mpcc-gcq branches
  bool relations = false;
  bool m_stat = false;
  bool b_stat = false;
  std::vector<StatForm> stat_forms{StatForm::Anf, StatForm::Mpcc};
  bool expected = false;
  int cover_depth_cap = 32;
};

struct PointOutcome {
  Json json;
  std::vector<Verdict> verdicts;  // everything that feeds the exit code
  bool consistent = true;         // relations, cross-form agreement, necessity checks
  bool expected_ok = true;
  std::vector<std::string> mismatches;
};

PointOutcome run_point(const ProblemFile& pf, const ProblemPoint& pt, const Sections& s);

Json problem_header(const ProblemFile& pf);
Json tool_header();

// 0 all hold and consistent, 1 something fails or is inconsistent, 2 something unknown.
int exit_code(const std::vector<PointOutcome>& outs);

// Re-validates every certificate in a list of point reports against the
// problem file alone. Returns false and appends messages on any failure.
bool recheck_points(const ProblemFile& pf, const Json& points, std::vector<std::string>& failures);

// Plain text rendering of a report; ANSI colors only if `color`.
std::string render_table(const Json& report, bool color);

}  // namespace anfcq::report
