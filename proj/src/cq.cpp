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

#include "anfcq/cq.hpp"

#include <algorithm>
#include <functional>

#include "anfcq/lp.hpp"

namespace anfcq {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

std::string to_string(FormulationKind k) {
  switch (k) {
    case FormulationKind::IAnf: return "i-anf";
    case FormulationKind::EAnf: return "e-anf";
    case FormulationKind::IMpcc: return "i-mpcc";
    case FormulationKind::EMpcc: return "e-mpcc";
  }
  return "?";
}

FormulationKind formulation_from_string(const std::string& s) {
  if (s == "i-anf" || s == "anf") return FormulationKind::IAnf;
  if (s == "e-anf" || s == "slack-anf") return FormulationKind::EAnf;
  if (s == "i-mpcc" || s == "mpcc") return FormulationKind::IMpcc;
  if (s == "e-mpcc" || s == "slack-mpcc") return FormulationKind::EMpcc;
  throw std::invalid_argument("unknown formulation '" + s + "'");
}

bool is_mpcc(FormulationKind k) { return k == FormulationKind::IMpcc || k == FormulationKind::EMpcc; }

std::string to_string(RelationCheck::Outcome o) {
  switch (o) {
    case RelationCheck::Outcome::Consistent: return "consistent";
    case RelationCheck::Outcome::Inconsistent: return "inconsistent";
    case RelationCheck::Outcome::Untestable: return "untestable";
  }
  return "?";
}

const TangentAnnotation* AnnotationSet::find(FormulationKind f, const std::string& point,
                                             const std::string& branch) const {
  for (const auto& a : items)
    if (a.formulation == f && a.branch_label == branch && (a.point_label.empty() || a.point_label == point))
      return &a;
  return nullptr;
}

bool FormulationAnalysis::all_resolved() const {
  for (const auto& b : branches)
    if (!b.resolved) return false;
  return true;
}

std::vector<std::string> FormulationAnalysis::unresolved() const {
  std::vector<std::string> out;
  for (const auto& b : branches)
    if (!b.resolved) out.push_back(b.problem.label);
  return out;
}

const FormulationAnalysis& PointAnalysis::get(FormulationKind k) const {
  switch (k) {
    case FormulationKind::IAnf: return i_anf;
    case FormulationKind::EAnf: return e_anf;
    case FormulationKind::IMpcc: return i_mpcc;
    case FormulationKind::EMpcc: return e_mpcc;
  }
  return i_anf;
}

const FormulationVerdicts& PointVerdicts::get(FormulationKind k) const {
  switch (k) {
    case FormulationKind::IAnf: return i_anf;
    case FormulationKind::EAnf: return e_anf;
    case FormulationKind::IMpcc: return i_mpcc;
    case FormulationKind::EMpcc: return e_mpcc;
  }
  return i_anf;
}

namespace {

FormulationAnalysis build_formulation(FormulationKind kind, std::vector<SmoothBranchProblem> branches,
                                      UnionCone lin_union, RatVector point, const AnnotationSet& ann,
                                      const std::string& point_label) {
  FormulationAnalysis f;
  f.kind = kind;
  f.dim = lin_union.dim;
  f.point = std::move(point);
  f.lin_union = std::move(lin_union);
  for (auto& prob : branches) {
    BranchAnalysis b;
    b.lin = lin_cone_branch(prob);
    b.certificate = tangent_cone_branch(prob);
    b.tangent = UnionCone(prob.num_vars);
    if (b.certificate.status != TangentStatus::Unknown) {
      b.resolved = true;
      b.tangent_status = b.certificate.status;
      b.tangent_source = b.certificate.detail;
      b.tangent.add("linearized", b.lin);
    } else if (const TangentAnnotation* a = ann.find(kind, point_label, prob.label)) {
      b.resolved = true;
      b.tangent_status = TangentStatus::Annotated;
      b.tangent_source = "annotation";
      for (std::size_t k = 0; k < a->pieces.size(); ++k) {
        if (a->pieces[k].dim != prob.num_vars)
          throw std::invalid_argument("annotation for " + prob.label + " has dimension " +
                                      std::to_string(a->pieces[k].dim) + ", expected " +
                                      std::to_string(prob.num_vars));
        b.tangent.add("annotation piece " + std::to_string(k + 1), a->pieces[k].intersect(b.lin));
      }
    }
    b.problem = std::move(prob);
    f.branches.push_back(std::move(b));
  }
  return f;
}

// Image of every piece under a linear map, through generators.
UnionCone map_union(const UnionCone& src, const RatMatrix& m) {
  UnionCone out(m.rows());
  for (std::size_t k = 0; k < src.members.size(); ++k) {
    ConeGenerators g = dd_hrep_to_vrep(src.members[k]);
    ConeGenerators img;
    img.dim = m.rows();
    for (const auto& r : g.rays) {
      RatVector v = m * r;
      if (!is_zero(v)) img.rays.push_back(v);
    }
    for (const auto& l : g.lineality) {
      RatVector v = m * l;
      if (!is_zero(v)) img.lineality.push_back(v);
    }
    out.add(src.labels[k], dd_vrep_to_hrep(img));
  }
  return out;
}

// Abs-normal branch directions to counterpart branch directions.
RatMatrix anf_to_mpcc_matrix(const MpccProgram& mp, const Signature& sigma) {
  RatMatrix m(mp.num_vars(), mp.n_t + mp.s);
  for (std::size_t j = 0; j < mp.n_t; ++j) m(j, j) = 1;
  for (std::size_t i = 0; i < mp.s; ++i) {
    if (sigma[i] > 0) m(mp.u_index(i), mp.n_t + i) = 1;
    else m(mp.v_index(i), mp.n_t + i) = -1;
  }
  return m;
}

// Base branch directions to slack-lifted branch directions: dw = dzw = Sw (dcI).
RatMatrix lift_matrix(const AbsNormalProgram& p, const EvalResult& e, const Signature& lifted_sigma) {
  const std::size_t n = p.n_t, s = p.s, m2 = p.m2();
  const ConstraintJacobians J = constraint_jacobians(p, e);
  // Rows: t [0,n), w [n,n+m2), zt [n+m2, n+m2+s), zw [n+m2+s, n+2m2+s).
  RatMatrix m(n + 2 * m2 + s, n + s);
  for (std::size_t j = 0; j < n; ++j) m(j, j) = 1;
  for (std::size_t i = 0; i < s; ++i) m(n + m2 + i, n + i) = 1;
  for (std::size_t j = 0; j < m2; ++j) {
    const Rational sw(lifted_sigma[s + j]);
    for (std::size_t c = 0; c < n; ++c) {
      m(n + j, c) = sw * J.i_t(j, c);
      m(n + m2 + s + j, c) = sw * J.i_t(j, c);
    }
    for (std::size_t i = 0; i < s; ++i) {
      const Rational v = sw * J.i_z(j, i) * Rational(lifted_sigma[i]);
      m(n + j, n + i) = v;
      m(n + m2 + s + j, n + i) = v;
    }
  }
  return m;
}

RatMatrix project_matrix(const AbsNormalProgram& p) {
  const std::size_t n = p.n_t, s = p.s, m2 = p.m2();
  RatMatrix m(n + s, n + 2 * m2 + s);
  for (std::size_t j = 0; j < n; ++j) m(j, j) = 1;
  for (std::size_t i = 0; i < s; ++i) m(n + i, n + m2 + i) = 1;
  return m;
}

Signature head(const Signature& s, std::size_t k) { return Signature(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k)); }

std::vector<std::size_t> partition_head(const std::vector<std::size_t>& part, std::size_t s) {
  std::vector<std::size_t> out;
  for (auto i : part)
    if (i < s) out.push_back(i);
  return out;
}

void transport_all(PointAnalysis& pa) {
  const std::size_t s = pa.program.s;
  struct Link {
    FormulationAnalysis* from;
    std::size_t index;
    RatMatrix map;
  };
  // Neighbors of a branch, in a fixed order.
  auto links = [&](FormulationKind k, std::size_t b) {
    std::vector<Link> out;
    switch (k) {
      case FormulationKind::IAnf: {
        out.push_back({&pa.i_mpcc, b, psi_matrix(pa.mpcc_i)});
        const Signature& sg = pa.i_anf.branches[b].problem.spec.sigma;
        for (std::size_t j = 0; j < pa.e_anf.branches.size(); ++j)
          if (head(pa.e_anf.branches[j].problem.spec.sigma, s) == sg)
            out.push_back({&pa.e_anf, j, project_matrix(pa.program)});
        break;
      }
      case FormulationKind::IMpcc:
        out.push_back({&pa.i_anf, b, anf_to_mpcc_matrix(pa.mpcc_i, pa.i_anf.branches[b].problem.spec.sigma)});
        break;
      case FormulationKind::EAnf: {
        const Signature& sg = pa.e_anf.branches[b].problem.spec.sigma;
        for (std::size_t j = 0; j < pa.i_anf.branches.size(); ++j)
          if (pa.i_anf.branches[j].problem.spec.sigma == head(sg, s))
            out.push_back({&pa.i_anf, j, lift_matrix(pa.program, pa.eval_i, sg)});
        out.push_back({&pa.e_mpcc, b, psi_matrix(pa.mpcc_e)});
        break;
      }
      case FormulationKind::EMpcc:
        out.push_back({&pa.e_anf, b, anf_to_mpcc_matrix(pa.mpcc_e, pa.e_anf.branches[b].problem.spec.sigma)});
        break;
    }
    return out;
  };
  const FormulationKind order[] = {FormulationKind::IAnf, FormulationKind::IMpcc, FormulationKind::EAnf,
                                   FormulationKind::EMpcc};
  bool changed = true;
  while (changed) {
    changed = false;
    for (FormulationKind k : order) {
      auto& f = const_cast<FormulationAnalysis&>(pa.get(k));
      for (std::size_t b = 0; b < f.branches.size(); ++b) {
        if (f.branches[b].resolved) continue;
        for (auto& l : links(k, b)) {
          const BranchAnalysis& src = l.from->branches[l.index];
          if (!src.resolved) continue;
          BranchAnalysis& dst = f.branches[b];
          dst.tangent = map_union(src.tangent, l.map);
          dst.resolved = true;
          dst.tangent_status = TangentStatus::Transported;
          dst.tangent_source = "transported from " + to_string(l.from->kind) + " " + src.problem.label;
          changed = true;
          break;
        }
      }
    }
  }
}

}  // namespace

PointAnalysis analyze_point(const AbsNormalProgram& p, const RatVector& t, const AnnotationSet& ann,
                            const AnalysisOptions& opts) {
  PointAnalysis pa;
  pa.program = p;
  pa.eval_i = eval(p, t);
  if (!pa.eval_i.feasible()) throw InfeasibleAnchorError("point " + to_string(t) + " is not feasible");
  pa.slack = to_slack(p);
  pa.eval_e = eval(pa.slack.lifted, lift_point(p, t, opts.w_signs));
  pa.mpcc_i = to_mpcc(p);
  pa.mpcc_e = to_mpcc(pa.slack.lifted);

  auto joint = [](const EvalResult& e) {
    RatVector x = e.t;
    x.insert(x.end(), e.z.begin(), e.z.end());
    return x;
  };
  const RatVector xi = joint(pa.eval_i), xe = joint(pa.eval_e);
  pa.point_i_mpcc = make_mpcc_point(pa.mpcc_i, phi_inv(p, pa.mpcc_i, xi));
  pa.point_e_mpcc = make_mpcc_point(pa.mpcc_e, phi_inv(pa.slack.lifted, pa.mpcc_e, xe));

  const std::string& pl = opts.point_label;
  pa.i_anf = build_formulation(FormulationKind::IAnf, enumerate_anf_branches(p, pa.eval_i, opts.limits),
                               lin_cone_abs(p, pa.eval_i, opts.limits), xi, ann, pl);
  pa.e_anf = build_formulation(FormulationKind::EAnf,
                               enumerate_anf_branches(pa.slack.lifted, pa.eval_e, opts.limits),
                               lin_cone_abs(pa.slack.lifted, pa.eval_e, opts.limits), xe, ann, pl);
  pa.i_mpcc = build_formulation(FormulationKind::IMpcc,
                                enumerate_mpcc_branches(pa.mpcc_i, pa.point_i_mpcc, opts.limits),
                                lin_cone_mpcc(pa.mpcc_i, pa.point_i_mpcc, opts.limits), pa.point_i_mpcc.y,
                                ann, pl);
  pa.e_mpcc = build_formulation(FormulationKind::EMpcc,
                                enumerate_mpcc_branches(pa.mpcc_e, pa.point_e_mpcc, opts.limits),
                                lin_cone_mpcc(pa.mpcc_e, pa.point_e_mpcc, opts.limits), pa.point_e_mpcc.y,
                                ann, pl);
  if (opts.transport) transport_all(pa);
  return pa;
}

namespace {

std::string cq_name(FormulationKind f, CqKind k, bool branch) {
  if (branch) return k == CqKind::ACQ ? "branch ACQ" : "branch GCQ";
  if (is_mpcc(f)) return k == CqKind::ACQ ? "MPCC-ACQ" : "MPCC-GCQ";
  return k == CqKind::ACQ ? "AKQ" : "GKQ";
}

void decide_acq(CQVerdict& v, const UnionCone& tangent, const UnionCone& lin, bool all_resolved, int cap) {
  bool unknown_cap = false, unknown_open = false;
  for (const auto& piece : lin.members) {
    CoverResult r = union_covers(tangent, piece, cap);
    if (r.status == CoverStatus::Covered) {
      v.cover_trees.push_back(std::move(r.tree));
    } else if (r.status == CoverStatus::NotCovered) {
      if (all_resolved) {
        v.status = Verdict::Fails;
        v.witness = r.witness;
        v.cover_trees.clear();
        v.reason = "a linearized direction lies outside the tangent cone";
        return;
      }
      unknown_open = true;
    } else {
      unknown_cap = true;
    }
  }
  if (unknown_open || unknown_cap) {
    v.status = Verdict::Unknown;
    v.cover_trees.clear();
    v.reason = unknown_cap ? "cover search reached the depth cap"
                           : "linearized cone not covered by the resolved tangent cones; some branches unresolved";
    return;
  }
  v.status = Verdict::Holds;
  v.reason = "every linearized piece is covered by tangent pieces";
}

void decide_gcq(CQVerdict& v, const UnionCone& tangent, const UnionCone& lin, bool all_resolved) {
  // Route 1: compare the dual cones.
  const PolyCone tdual = dual_union(tangent);
  const PolyCone ldual = dual_union(lin);
  const bool holds_dual = cone_contains(ldual, tdual);

  // Route 2: every linearized generator is a conic combination of tangent generators.
  std::vector<RatVector> gens;
  for (const auto& m : tangent.members)
    for (auto& d : dd_hrep_to_vrep(m).all_directions()) gens.push_back(primitive_direction(d));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<RatVector> lin_dirs;
  for (const auto& m : lin.members)
    for (auto& d : dd_hrep_to_vrep(m).all_directions()) lin_dirs.push_back(d);
  std::sort(lin_dirs.begin(), lin_dirs.end());
  lin_dirs.erase(std::unique(lin_dirs.begin(), lin_dirs.end()), lin_dirs.end());

  bool holds_lp = true;
  std::vector<ConicCombination> combos;
  RatVector omega, sep;
  for (const auto& d : lin_dirs) {
    LpProblem lp(gens.size());
    for (std::size_t i = 0; i < lin.dim; ++i) {
      RatVector row(gens.size());
      for (std::size_t k = 0; k < gens.size(); ++k) row[k] = gens[k][i];
      lp.add_eq(row, d[i]);
    }
    for (std::size_t k = 0; k < gens.size(); ++k) {
      RatVector row(gens.size());
      row[k] = 1;
      lp.add_ge(row, Rational(0));
    }
    LpResult r = lp_solve(lp);
    if (r.status == LpStatus::Feasible) {
      combos.push_back({d, r.primal});
    } else {
      holds_lp = false;
      omega = primitive_direction(Rational(-1) * r.dual_eq);
      sep = d;
      break;
    }
  }
  if (holds_dual != holds_lp)
    throw std::logic_error("dual-cone comparison and conic-combination test disagree");
  if (holds_lp) {
    v.status = Verdict::Holds;
    v.reason = "the linearized cone lies in the closed convex hull of the tangent cone";
    v.tangent_directions = std::move(gens);
    v.combinations = std::move(combos);
    return;
  }
  if (!all_resolved) {
    v.status = Verdict::Unknown;
    v.reason = "dual comparison inconclusive while some branches are unresolved";
    return;
  }
  v.status = Verdict::Fails;
  v.reason = "a vector of the tangent dual is negative on a linearized direction";
  v.witness = omega;
  v.separating = sep;
}

}  // namespace

CQVerdict check_branch_cq(const FormulationAnalysis& f, std::size_t index, CqKind kind, int depth_cap) {
  const BranchAnalysis& b = f.branches.at(index);
  CQVerdict v;
  v.name = cq_name(f.kind, kind, true);
  v.formulation = f.kind;
  v.kind = kind;
  v.branch_label = b.problem.label;
  if (!b.resolved) {
    v.status = Verdict::Unknown;
    v.blocking = {b.problem.label};
    v.reason = "tangent cone not certified and not annotated";
    return v;
  }
  UnionCone lin(b.lin.dim);
  lin.add(b.problem.label, b.lin);
  if (kind == CqKind::ACQ) decide_acq(v, b.tangent, lin, true, depth_cap);
  else decide_gcq(v, b.tangent, lin, true);
  return v;
}

UnionCone formulation_tangent_union(const FormulationAnalysis& f) {
  UnionCone tangent(f.dim);
  for (const auto& b : f.branches)
    if (b.resolved)
      for (std::size_t k = 0; k < b.tangent.members.size(); ++k)
        tangent.add(b.problem.label + " / " + b.tangent.labels[k], b.tangent.members[k]);
  return tangent;
}

CQVerdict check_formulation_cq(const FormulationAnalysis& f, CqKind kind, int depth_cap) {
  CQVerdict v;
  v.name = cq_name(f.kind, kind, false);
  v.formulation = f.kind;
  v.kind = kind;
  v.blocking = f.unresolved();
  const UnionCone tangent = formulation_tangent_union(f);
  if (kind == CqKind::ACQ) decide_acq(v, tangent, f.lin_union, f.all_resolved(), depth_cap);
  else decide_gcq(v, tangent, f.lin_union, f.all_resolved());
  return v;
}

namespace {

Verdict all_of(const std::vector<CQVerdict>& vs) {
  bool unknown = false;
  for (const auto& v : vs) {
    if (v.status == Verdict::Fails) return Verdict::Fails;
    if (v.status == Verdict::Unknown) unknown = true;
  }
  return unknown ? Verdict::Unknown : Verdict::Holds;
}

}  // namespace

Verdict FormulationVerdicts::all_branch_acq() const { return all_of(branch_acq); }
Verdict FormulationVerdicts::all_branch_gcq() const { return all_of(branch_gcq); }

PointVerdicts compute_verdicts(const PointAnalysis& pa, int cap) {
  auto one = [&](const FormulationAnalysis& f) {
    FormulationVerdicts fv;
    fv.acq = check_formulation_cq(f, CqKind::ACQ, cap);
    fv.gcq = check_formulation_cq(f, CqKind::GCQ, cap);
    for (std::size_t b = 0; b < f.branches.size(); ++b) {
      fv.branch_acq.push_back(check_branch_cq(f, b, CqKind::ACQ, cap));
      fv.branch_gcq.push_back(check_branch_cq(f, b, CqKind::GCQ, cap));
    }
    return fv;
  };
  PointVerdicts v;
  v.i_anf = one(pa.i_anf);
  v.e_anf = one(pa.e_anf);
  v.i_mpcc = one(pa.i_mpcc);
  v.e_mpcc = one(pa.e_mpcc);
  return v;
}

bool RelationReport::consistent() const {
  for (const auto& c : checks)
    if (c.outcome == RelationCheck::Outcome::Inconsistent) return false;
  for (const auto& s : structural)
    if (!s.ok) return false;
  return true;
}

std::vector<const RelationCheck*> RelationReport::open_converse_candidates() const {
  std::vector<const RelationCheck*> out;
  for (const auto& c : checks)
    if (c.open_converse && c.converse_observed_false) out.push_back(&c);
  return out;
}

StructuralCheck check_decomposition(const FormulationAnalysis& f) {
  StructuralCheck c;
  c.id = "decomposition " + to_string(f.kind);
  UnionCone branches(f.dim);
  for (const auto& b : f.branches) branches.add(b.problem.label, b.lin);
  RatVector w;
  CoverStatus a = union_contains_union(branches, f.lin_union, &w);
  if (a != CoverStatus::Covered) {
    c.ok = false;
    c.detail = a == CoverStatus::Unknown ? "cover search reached the depth cap"
                                         : "linearized direction " + to_string(w) + " misses every branch cone";
    return c;
  }
  CoverStatus b = union_contains_union(f.lin_union, branches, &w);
  if (b != CoverStatus::Covered) {
    c.ok = false;
    c.detail = b == CoverStatus::Unknown ? "cover search reached the depth cap"
                                         : "branch direction " + to_string(w) + " lies outside the linearized cone";
    return c;
  }
  c.detail = "linearized cone equals the union of " + std::to_string(f.branches.size()) + " branch cones";
  return c;
}

RelationReport verify_relations(const PointAnalysis& pa, const PointVerdicts& v) {
  RelationReport rep;
  auto add = [&](std::string id, std::string lhs, Verdict a, std::string rhs, Verdict b, bool equiv,
                 bool open_converse) {
    RelationCheck c;
    c.id = std::move(id);
    c.lhs = std::move(lhs);
    c.rhs = std::move(rhs);
    c.equivalence = equiv;
    c.open_converse = open_converse;
    c.statement = c.lhs + (equiv ? " <=> " : " => ") + c.rhs;
    c.lhs_value = a;
    c.rhs_value = b;
    const bool clash_fwd = a == Verdict::Holds && b == Verdict::Fails;
    const bool clash_back = a == Verdict::Fails && b == Verdict::Holds;
    if (clash_fwd || (equiv && clash_back)) c.outcome = RelationCheck::Outcome::Inconsistent;
    else if (equiv) c.outcome = (a != Verdict::Unknown && b != Verdict::Unknown)
                                    ? RelationCheck::Outcome::Consistent
                                    : RelationCheck::Outcome::Untestable;
    else c.outcome = (a == Verdict::Fails || (a == Verdict::Holds && b == Verdict::Holds))
                         ? RelationCheck::Outcome::Consistent
                         : RelationCheck::Outcome::Untestable;
    c.converse_observed_false = !equiv && clash_back;
    rep.checks.push_back(std::move(c));
  };

  const FormulationKind kinds[] = {FormulationKind::IAnf, FormulationKind::EAnf, FormulationKind::IMpcc,
                                   FormulationKind::EMpcc};
  auto tag = [](FormulationKind k) { return " (" + to_string(k) + ")"; };

  // Branch conditions on all branches imply the formulation-level condition.
  for (FormulationKind k : kinds) {
    const auto& fv = v.get(k);
    add("all-branch-acq=>acq" + tag(k), "branch ACQ on all branches" + tag(k), fv.all_branch_acq(),
        fv.acq.name + tag(k), fv.acq.status, false, false);
    add("all-branch-gcq=>gcq" + tag(k), "branch GCQ on all branches" + tag(k), fv.all_branch_gcq(),
        fv.gcq.name + tag(k), fv.gcq.status, false, false);
  }
  // Abs-normal versus counterpart.
  add("akq<=>mpcc-acq (i)", "AKQ (i-anf)", v.i_anf.acq.status, "MPCC-ACQ (i-mpcc)", v.i_mpcc.acq.status, true, false);
  add("akq<=>mpcc-acq (e)", "AKQ (e-anf)", v.e_anf.acq.status, "MPCC-ACQ (e-mpcc)", v.e_mpcc.acq.status, true, false);
  add("mpcc-gcq=>gkq (i)", "MPCC-GCQ (i-mpcc)", v.i_mpcc.gcq.status, "GKQ (i-anf)", v.i_anf.gcq.status, false, true);
  add("mpcc-gcq=>gkq (e)", "MPCC-GCQ (e-mpcc)", v.e_mpcc.gcq.status, "GKQ (e-anf)", v.e_anf.gcq.status, false, true);
  // Inequality form versus slack form.
  add("akq i<=>e", "AKQ (i-anf)", v.i_anf.acq.status, "AKQ (e-anf)", v.e_anf.acq.status, true, false);
  add("gkq e=>i", "GKQ (e-anf)", v.e_anf.gcq.status, "GKQ (i-anf)", v.i_anf.gcq.status, false, true);
  add("mpcc-acq i<=>e", "MPCC-ACQ (i-mpcc)", v.i_mpcc.acq.status, "MPCC-ACQ (e-mpcc)", v.e_mpcc.acq.status, true,
      false);
  add("mpcc-gcq e=>i", "MPCC-GCQ (e-mpcc)", v.e_mpcc.gcq.status, "MPCC-GCQ (i-mpcc)", v.i_mpcc.gcq.status, false,
      true);

  // Branchwise correspondences.
  auto branch_pair = [&](const std::string& what, FormulationKind ka, std::size_t ia, FormulationKind kb,
                         std::size_t ib) {
    const auto& a = v.get(ka);
    const auto& b = v.get(kb);
    const std::string la = a.branch_acq[ia].branch_label, lb = b.branch_acq[ib].branch_label;
    add("branch-acq " + what + " " + la + " ~ " + lb, "branch ACQ " + la + tag(ka), a.branch_acq[ia].status,
        "branch ACQ " + lb + tag(kb), b.branch_acq[ib].status, true, false);
    add("branch-gcq " + what + " " + la + " ~ " + lb, "branch GCQ " + la + tag(ka), a.branch_gcq[ia].status,
        "branch GCQ " + lb + tag(kb), b.branch_gcq[ib].status, true, false);
  };
  for (std::size_t k = 0; k < pa.i_anf.branches.size(); ++k) branch_pair("anf~mpcc", FormulationKind::IAnf, k, FormulationKind::IMpcc, k);
  for (std::size_t k = 0; k < pa.e_anf.branches.size(); ++k) branch_pair("anf~mpcc", FormulationKind::EAnf, k, FormulationKind::EMpcc, k);
  const std::size_t s = pa.program.s;
  for (std::size_t k = 0; k < pa.e_anf.branches.size(); ++k) {
    const Signature sg = head(pa.e_anf.branches[k].problem.spec.sigma, s);
    for (std::size_t j = 0; j < pa.i_anf.branches.size(); ++j)
      if (pa.i_anf.branches[j].problem.spec.sigma == sg) branch_pair("i~e", FormulationKind::IAnf, j, FormulationKind::EAnf, k);
  }
  for (std::size_t k = 0; k < pa.e_mpcc.branches.size(); ++k) {
    const auto ph = partition_head(pa.e_mpcc.branches[k].problem.spec.partition, s);
    for (std::size_t j = 0; j < pa.i_mpcc.branches.size(); ++j)
      if (pa.i_mpcc.branches[j].problem.spec.partition == ph) branch_pair("i~e", FormulationKind::IMpcc, j, FormulationKind::EMpcc, k);
  }

  // Structural checks: branch labels correspond, decomposition, tangent inside linearized.
  for (std::size_t k = 0; k < pa.i_anf.branches.size(); ++k) {
    StructuralCheck c;
    c.id = "branch correspondence (i) " + pa.i_anf.branches[k].problem.label;
    c.ok = branch_correspondence(pa.i_anf.branches[k].problem.spec).partition ==
           pa.i_mpcc.branches[k].problem.spec.partition;
    c.detail = pa.i_anf.branches[k].problem.label + " ~ " + pa.i_mpcc.branches[k].problem.label;
    rep.structural.push_back(c);
  }
  for (FormulationKind k : kinds) {
    const auto& f = pa.get(k);
    rep.structural.push_back(check_decomposition(f));
    for (const auto& b : f.branches) {
      if (!b.resolved) continue;
      StructuralCheck c;
      c.id = "tangent within linearized " + to_string(k) + " " + b.problem.label;
      for (const auto& m : b.tangent.members)
        if (!cone_contains(b.lin, m)) c.ok = false;
      c.detail = c.ok ? "ok" : "a tangent piece leaves the linearized cone";
      rep.structural.push_back(c);
    }
  }
  return rep;
}

}  // namespace anfcq
