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

#include <cstddef>
#include <string>
#include <vector>

#include "anfcq/cones.hpp"

namespace anfcq {

enum class Verdict { Holds, Fails, Unknown };
std::string to_string(Verdict v);

// The four formulations of one problem: the abs-normal program (I), its slack
// lifting (E), and the complementarity counterpart of each.
enum class FormulationKind { IAnf, EAnf, IMpcc, EMpcc };
std::string to_string(FormulationKind k);
FormulationKind formulation_from_string(const std::string& s);
bool is_mpcc(FormulationKind k);

// Human-supplied tangent cone of one branch, as a union of polyhedral pieces.
// Each piece is intersected with the branch's linearized cone.
struct TangentAnnotation {
  FormulationKind formulation = FormulationKind::IAnf;
  std::string point_label;  // empty matches every point
  std::string branch_label;
  std::vector<PolyCone> pieces;
};

struct AnnotationSet {
  std::vector<TangentAnnotation> items;
  const TangentAnnotation* find(FormulationKind f, const std::string& point, const std::string& branch) const;
};

struct BranchAnalysis {
  SmoothBranchProblem problem;
  PolyCone lin;
  TangentCertificate certificate;  // the branch's own attempt
  TangentStatus tangent_status = TangentStatus::Unknown;
  std::string tangent_source;
  bool resolved = false;
  UnionCone tangent;  // meaningful when resolved
};

struct FormulationAnalysis {
  FormulationKind kind = FormulationKind::IAnf;
  std::size_t dim = 0;
  RatVector point;
  std::vector<BranchAnalysis> branches;
  UnionCone lin_union;  // built from the formulation's own definition, not from branches
  bool all_resolved() const;
  std::vector<std::string> unresolved() const;
};

struct AnalysisOptions {
  BranchLimits limits;
  std::vector<int> w_signs;  // slack representative; empty means w = cI
  std::string point_label;
  bool transport = true;
  int cover_depth_cap = 32;
};

struct PointAnalysis {
  AbsNormalProgram program;
  SlackProgram slack;
  MpccProgram mpcc_i;
  MpccProgram mpcc_e;
  EvalResult eval_i;
  EvalResult eval_e;
  MpccPoint point_i_mpcc;
  MpccPoint point_e_mpcc;
  FormulationAnalysis i_anf, e_anf, i_mpcc, e_mpcc;

  const FormulationAnalysis& get(FormulationKind k) const;
};

class InfeasibleAnchorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Builds all four formulations at t, enumerates their branches, certifies or
// resolves tangent cones, and carries resolved cones between formulations
// along the linear branch correspondences.
PointAnalysis analyze_point(const AbsNormalProgram& p, const RatVector& t, const AnnotationSet& ann = {},
                            const AnalysisOptions& opts = {});

enum class CqKind { ACQ, GCQ };

// Conic combination showing a linearized direction lies in the closed convex
// hull of the tangent directions.
struct ConicCombination {
  RatVector direction;
  std::vector<Rational> weights;
};

struct CQVerdict {
  std::string name;  // "AKQ", "GKQ", "MPCC-ACQ", "MPCC-GCQ", "branch ACQ", "branch GCQ"
  FormulationKind formulation = FormulationKind::IAnf;
  CqKind kind = CqKind::ACQ;
  std::string branch_label;  // empty at formulation level
  Verdict status = Verdict::Unknown;
  std::string reason;
  std::vector<std::string> blocking;  // unresolved branches
  // ACQ fails: a linearized direction outside the tangent cone.
  // GCQ fails: a vector of the tangent dual outside the linearized dual.
  RatVector witness;
  RatVector separating;  // GCQ fails: linearized direction d with witness . d < 0
  // Evidence for Holds.
  std::vector<CoverTree> cover_trees;                 // ACQ: one per linearized piece
  std::vector<RatVector> tangent_directions;          // GCQ
  std::vector<ConicCombination> combinations;         // GCQ
};

CQVerdict check_branch_cq(const FormulationAnalysis& f, std::size_t branch, CqKind kind, int depth_cap = 32);
// Union of the tangent pieces of all resolved branches, in branch order.
UnionCone formulation_tangent_union(const FormulationAnalysis& f);

CQVerdict check_formulation_cq(const FormulationAnalysis& f, CqKind kind, int depth_cap = 32);

// All verdicts of one formulation.
struct FormulationVerdicts {
  CQVerdict acq, gcq;
  std::vector<CQVerdict> branch_acq, branch_gcq;
  Verdict all_branch_acq() const;
  Verdict all_branch_gcq() const;
};

struct PointVerdicts {
  FormulationVerdicts i_anf, e_anf, i_mpcc, e_mpcc;
  const FormulationVerdicts& get(FormulationKind k) const;
};

PointVerdicts compute_verdicts(const PointAnalysis& pa, int depth_cap = 32);

struct RelationCheck {
  std::string id;
  std::string statement;
  bool equivalence = false;
  bool open_converse = false;  // the reverse direction is not known to hold
  std::string lhs, rhs;
  Verdict lhs_value = Verdict::Unknown, rhs_value = Verdict::Unknown;
  enum class Outcome { Consistent, Inconsistent, Untestable } outcome = Outcome::Untestable;
  bool converse_observed_false = false;  // one-sided arrow: rhs holds while lhs fails
};

std::string to_string(RelationCheck::Outcome o);

struct StructuralCheck {
  std::string id;
  bool ok = true;
  std::string detail;
};

struct RelationReport {
  std::vector<RelationCheck> checks;
  std::vector<StructuralCheck> structural;
  bool consistent() const;
  std::vector<const RelationCheck*> open_converse_candidates() const;
};

// Decomposition: the formulation's linearized cone equals the union of its
// branch linearized cones (mutual covering).
StructuralCheck check_decomposition(const FormulationAnalysis& f);

RelationReport verify_relations(const PointAnalysis& pa, const PointVerdicts& v);

}  // namespace anfcq
