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


#include "anfcq/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <optional>
#include <set>
#include <sstream>

namespace anfcq::report {

namespace {

const FormulationKind kKinds[] = {FormulationKind::IAnf, FormulationKind::EAnf, FormulationKind::IMpcc,
                                  FormulationKind::EMpcc};

Json indices(const std::vector<std::size_t>& v) {
  Json a = Json::array();
  for (auto i : v) a.push_back(i + 1);
  return a;
}

Json rows(const RatMatrix& m) {
  Json a = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(vec(m.row(r)));
  return a;
}

Json strings(const std::vector<std::string>& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

Json rat(const Rational& r) { return r.str(); }

Json vec(const RatVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

Json cone(const PolyCone& c, bool with_generators) {
  Json j;
  j["dim"] = c.dim;
  j["equalities"] = rows(c.eq);
  j["inequalities"] = rows(c.ge);
  if (with_generators) {
    const ConeGenerators g = dd_hrep_to_vrep(c);
    Json gj;
    gj["rays"] = Json::array();
    for (const auto& r : g.rays) gj["rays"].push_back(vec(r));
    gj["lineality"] = Json::array();
    for (const auto& l : g.lineality) gj["lineality"].push_back(vec(l));
    j["generators"] = gj;
  }
  return j;
}

Json union_cone(const UnionCone& u) {
  Json a = Json::array();
  for (std::size_t k = 0; k < u.members.size(); ++k) {
    Json m = cone(u.members[k]);
    m["label"] = u.labels[k];
    a.push_back(m);
  }
  return a;
}

Json quad(const QuadraticFunc& q) {
  Json j;
  j["constant"] = rat(q.constant);
  j["linear"] = vec(q.linear);
  if (!q.hessian.is_zero()) j["hessian"] = rows(q.hessian);
  return j;
}

Json program(const AbsNormalProgram& p) {
  Json j;
  j["name"] = p.name;
  j["dimensions"] = {{"n_t", p.n_t}, {"s", p.s}, {"m1", p.m1()}, {"m2", p.m2()}};
  j["objective"] = quad(p.objective);
  for (const char* key : {"equalities", "inequalities", "switching"}) j[key] = Json::array();
  for (const auto& q : p.c_e) j["equalities"].push_back(quad(q));
  for (const auto& q : p.c_i) j["inequalities"].push_back(quad(q));
  for (const auto& q : p.c_z) j["switching"].push_back(quad(q));
  return j;
}

Json mpcc(const MpccProgram& mp) {
  Json j;
  j["name"] = mp.name;
  j["variables"] = {{"t", mp.n_t}, {"u", mp.s}, {"v", mp.s}};
  j["objective"] = quad(mp.objective);
  j["equalities"] = Json::array();
  for (const auto& q : mp.equalities) j["equalities"].push_back(quad(q));
  j["inequalities"] = Json::array();
  for (const auto& q : mp.inequalities) j["inequalities"].push_back(quad(q));
  j["complementarity"] = Json::array();
  for (std::size_t i = 0; i < mp.s; ++i) j["complementarity"].push_back({mp.u_index(i) + 1, mp.v_index(i) + 1});
  return j;
}

Json branch_problem(const SmoothBranchProblem& b) {
  Json j;
  j["label"] = b.label;
  j["num_vars"] = b.num_vars;
  j["anchor"] = vec(b.anchor);
  j["objective"] = quad(b.objective);
  j["equalities"] = Json::array();
  for (std::size_t k = 0; k < b.equalities.size(); ++k) {
    Json q = quad(b.equalities[k]);
    q["name"] = b.eq_names[k];
    j["equalities"].push_back(q);
  }
  j["inequalities"] = Json::array();
  for (std::size_t k = 0; k < b.inequalities.size(); ++k) {
    Json q = quad(b.inequalities[k]);
    q["name"] = b.ineq_names[k];
    j["inequalities"].push_back(q);
  }
  return j;
}

Json eval_summary(const EvalResult& e) {
  Json j;
  j["z"] = vec(e.z);
  j["abs_z"] = vec(e.abs_z);
  j["sigma"] = signature_label(e.sigma);
  j["active_switching"] = indices(e.alpha);
  j["active_inequalities"] = indices(e.active_ineq);
  j["c_e"] = vec(e.c_e_values);
  j["c_i"] = vec(e.c_i_values);
  j["feasible"] = e.feasible();
  return j;
}

Json cover_tree(const CoverTree& t) {
  Json j;
  if (t.children.empty()) {
    j["member"] = t.member;
    return j;
  }
  j["split"] = vec(t.split);
  j["children"] = Json::array();
  for (const auto& c : t.children) j["children"].push_back(cover_tree(c));
  return j;
}

Json cq_verdict(const CQVerdict& v) {
  Json j;
  j["name"] = v.name;
  j["formulation"] = to_string(v.formulation);
  if (!v.branch_label.empty()) j["branch"] = v.branch_label;
  j["status"] = to_string(v.status);
  j["reason"] = v.reason;
  if (!v.blocking.empty()) j["unresolved_branches"] = strings(v.blocking);
  if (!v.witness.empty()) j["witness"] = vec(v.witness);
  if (!v.separating.empty()) j["separating_direction"] = vec(v.separating);
  if (v.kind == CqKind::ACQ && v.status == Verdict::Holds) {
    j["cover_trees"] = Json::array();
    for (const auto& t : v.cover_trees) j["cover_trees"].push_back(cover_tree(t));
  }
  if (v.kind == CqKind::GCQ && v.status == Verdict::Holds) {
    j["tangent_directions"] = Json::array();
    for (const auto& d : v.tangent_directions) j["tangent_directions"].push_back(vec(d));
    j["combinations"] = Json::array();
    for (const auto& c : v.combinations)
      j["combinations"].push_back({{"direction", vec(c.direction)}, {"weights", vec(c.weights)}});
  }
  return j;
}

Json formulation(const FormulationAnalysis& f, bool dual) {
  Json j;
  j["formulation"] = to_string(f.kind);
  j["dim"] = f.dim;
  j["point"] = vec(f.point);
  j["lin_union"] = union_cone(f.lin_union);
  if (dual) j["lin_union_dual"] = cone(dual_union(f.lin_union));
  j["branches"] = Json::array();
  for (const auto& b : f.branches) {
    Json bj;
    bj["label"] = b.problem.label;
    bj["lin"] = cone(b.lin);
    if (dual) bj["lin_dual"] = cone(dual_cone(b.lin));
    bj["resolved"] = b.resolved;
    bj["tangent_status"] = to_string(b.tangent_status);
    if (!b.tangent_source.empty()) bj["tangent_source"] = b.tangent_source;
    if (b.certificate.status == TangentStatus::BranchMFCQ)
      bj["mfcq_direction"] = vec(b.certificate.mfcq_direction);
    if (b.resolved) {
      bj["tangent"] = union_cone(b.tangent);
      if (dual) bj["tangent_dual"] = cone(dual_union(b.tangent));
    }
    j["branches"].push_back(bj);
  }
  return j;
}

Json relations(const RelationReport& r) {
  Json j;
  j["consistent"] = r.consistent();
  j["checks"] = Json::array();
  for (const auto& c : r.checks) {
    Json cj;
    cj["id"] = c.id;
    cj["statement"] = c.statement;
    cj["lhs"] = to_string(c.lhs_value);
    cj["rhs"] = to_string(c.rhs_value);
    cj["outcome"] = to_string(c.outcome);
    if (c.open_converse) cj["open_converse"] = true;
    if (c.converse_observed_false) cj["converse_observed_false"] = true;
    j["checks"].push_back(cj);
  }
  j["structural"] = Json::array();
  for (const auto& s : r.structural) j["structural"].push_back({{"id", s.id}, {"ok", s.ok}, {"detail", s.detail}});
  j["open_converse_candidates"] = Json::array();
  for (const auto* c : r.open_converse_candidates()) j["open_converse_candidates"].push_back(c->id);
  return j;
}

Json multipliers(const MultiplierSet& m) {
  Json j;
  j["lam_e"] = vec(m.lam_e);
  j["lam_i"] = vec(m.lam_i);
  j["lam_z"] = vec(m.lam_z);
  if (!m.mu_u.empty()) j["mu_u"] = vec(m.mu_u);
  if (!m.mu_v.empty()) j["mu_v"] = vec(m.mu_v);
  if (!m.mu_plus.empty()) j["mu_plus"] = vec(m.mu_plus);
  if (!m.mu_minus.empty()) j["mu_minus"] = vec(m.mu_minus);
  return j;
}

Json stationarity(const StationarityVerdict& v) {
  Json j;
  j["kind"] = to_string(v.kind);
  j["status"] = to_string(v.status);
  j["reason"] = v.reason;
  if (v.kind == StationarityKind::MAnf || v.kind == StationarityKind::MMpcc) {
    j["degenerate"] = indices(v.degenerate);
    j["cases_tried"] = v.cases_tried;
    if (v.status == Verdict::Holds) {
      j["cases"] = v.cases;
      j["multipliers"] = multipliers(v.multipliers);
    }
    if (v.status == Verdict::Fails) {
      j["refutations"] = Json::array();
      for (const auto& r : v.refutations)
        j["refutations"].push_back({{"cases", r.cases}, {"dual_eq", vec(r.dual_eq)}, {"dual_ge", vec(r.dual_ge)}});
    }
    return j;
  }
  j["branches"] = Json::array();
  for (const auto& b : v.branches) {
    Json bj;
    bj["label"] = b.label;
    bj["stationary"] = b.stationary;
    bj["gradient"] = vec(b.gradient);
    if (b.stationary) {
      bj["eq_mult"] = vec(b.eq_mult);
      bj["ge_mult"] = vec(b.ge_mult);
    } else {
      bj["descent"] = vec(b.descent);
    }
    j["branches"].push_back(bj);
  }
  return j;
}

Rational read_rat(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  return Rational::parse(j.get<std::string>());
}

RatVector read_vec(const Json& j) {
  RatVector v;
  for (const auto& x : j) v.push_back(read_rat(x));
  return v;
}

PolyCone read_cone(const Json& j) {
  PolyCone c(j.at("dim").get<std::size_t>());
  for (const auto& r : j.at("equalities")) c.add_eq(read_vec(r));
  for (const auto& r : j.at("inequalities")) c.add_ge(read_vec(r));
  return c;
}

CoverTree read_tree(const Json& j) {
  CoverTree t;
  if (j.contains("member")) {
    t.member = j["member"].get<int>();
    return t;
  }
  t.split = read_vec(j.at("split"));
  for (const auto& c : j.at("children")) t.children.push_back(read_tree(c));
  return t;
}

Json tool_header() { return {{"name", kToolName}, {"version", kToolVersion}}; }

Json problem_header(const ProblemFile& pf) {
  Json j;
  j["name"] = pf.program.name;
  const auto slash = pf.path.find_last_of('/');
  j["file"] = slash == std::string::npos ? pf.path : pf.path.substr(slash + 1);
  j["digest"] = "sha256:" + sha256_hex(pf.text);
  return j;
}

namespace {

std::string key_of(StationarityKind k) {
  switch (k) {
    case StationarityKind::MAnf: return "m_anf";
    case StationarityKind::MMpcc: return "m_mpcc";
    case StationarityKind::BAnf: return "b_anf";
    case StationarityKind::BMpcc: return "b_mpcc";
  }
  return "?";
}

bool has(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

bool has(const std::vector<StatForm>& v, StatForm f) { return std::find(v.begin(), v.end(), f) != v.end(); }

MpccPoint counterpart_point(const AbsNormalProgram& p, const MpccProgram& mp, const EvalResult& e) {
  RatVector x = e.t;
  x.insert(x.end(), e.z.begin(), e.z.end());
  return make_mpcc_point(mp, phi_inv(p, mp, x));
}

}  // namespace

PointOutcome run_point(const ProblemFile& pf, const ProblemPoint& pt, const Sections& s) {
  const AbsNormalProgram& p = pf.program;
  PointOutcome out;
  Json& j = out.json;
  j["label"] = pt.label;
  j["t"] = vec(pt.t);
  j["minimizer"] = pt.minimizer;
  if (!pt.w_signs.empty()) j["w_signs"] = pt.w_signs;
  const EvalResult e = eval(p, pt.t);
  if (!e.feasible()) throw InfeasibleAnchorError("point " + to_string(pt.t) + " is not feasible");
  if (s.eval) j["eval"] = eval_summary(e);

  const bool need_pa = s.branches || s.analysis || !s.cq.empty() || s.relations || s.expected;
  std::optional<PointAnalysis> pa;
  if (need_pa) {
    AnalysisOptions opts;
    opts.w_signs = pt.w_signs;
    opts.point_label = pt.label;
    opts.cover_depth_cap = s.cover_depth_cap;
    pa = analyze_point(p, pt.t, pf.annotations, opts);
  }
  if (s.branches) {
    Json b;
    for (FormulationKind k : kKinds) {
      Json a = Json::array();
      for (const auto& br : pa->get(k).branches) a.push_back(branch_problem(br.problem));
      b[to_string(k)] = a;
    }
    j["branches"] = b;
  }
  if (s.analysis) {
    Json a;
    for (FormulationKind k : kKinds) a[to_string(k)] = formulation(pa->get(k), s.dual);
    j["analysis"] = a;
  }

  std::optional<PointVerdicts> v;
  std::optional<RelationReport> rr;
  if (!s.cq.empty() || s.relations || s.expected) v = compute_verdicts(*pa, s.cover_depth_cap);
  if (s.relations || s.expected) rr = verify_relations(*pa, *v);
  if (!s.cq.empty()) {
    Json cq;
    for (FormulationKind k : kKinds) {
      const FormulationVerdicts& fv = v->get(k);
      Json fj = Json::object();
      if (has(s.cq, is_mpcc(k) ? "mpcc-acq" : "akq")) {
        fj["acq"] = cq_verdict(fv.acq);
        out.verdicts.push_back(fv.acq.status);
      }
      if (has(s.cq, is_mpcc(k) ? "mpcc-gcq" : "gkq")) {
        fj["gcq"] = cq_verdict(fv.gcq);
        out.verdicts.push_back(fv.gcq.status);
      }
      if (has(s.cq, "branches")) {
        Json bs = Json::array();
        for (std::size_t b = 0; b < fv.branch_acq.size(); ++b) {
          bs.push_back({{"label", fv.branch_acq[b].branch_label},
                        {"acq", cq_verdict(fv.branch_acq[b])},
                        {"gcq", cq_verdict(fv.branch_gcq[b])}});
          out.verdicts.push_back(fv.branch_acq[b].status);
          out.verdicts.push_back(fv.branch_gcq[b].status);
        }
        fj["branches"] = bs;
        fj["all_branch_acq"] = to_string(fv.all_branch_acq());
        fj["all_branch_gcq"] = to_string(fv.all_branch_gcq());
      }
      if (!fj.empty()) cq[to_string(k)] = fj;
    }
    j["cq"] = cq;
  }
  if (s.relations) {
    j["relations"] = relations(*rr);
    if (!rr->consistent()) out.consistent = false;
  }

  // Stationarity.
  std::optional<StationarityVerdict> m_anf, m_mpcc, b_anf, b_mpcc;
  const bool want_anf = has(s.stat_forms, StatForm::Anf), want_mpcc = has(s.stat_forms, StatForm::Mpcc);
  const MpccProgram mp = pa ? pa->mpcc_i : to_mpcc(p);
  const MpccPoint mpt = pa ? pa->point_i_mpcc : counterpart_point(p, mp, e);
  if (s.m_stat || s.expected) {
    if (want_anf || s.expected) m_anf = check_m_stationary_anf(p, e);
    if (want_mpcc && s.m_stat) m_mpcc = check_m_stationary_mpcc(mp, mpt);
  }
  if (s.b_stat || s.expected) {
    if (want_anf || s.expected) b_anf = check_b_stationary_anf(p, e);
    if (want_mpcc && s.b_stat) b_mpcc = check_b_stationary_mpcc(mp, mpt);
  }
  if (s.m_stat || s.b_stat) {
    Json st;
    for (const auto* sv : {&m_anf, &m_mpcc, &b_anf, &b_mpcc}) {
      if (!sv->has_value()) continue;
      if (((*sv)->kind == StationarityKind::MAnf || (*sv)->kind == StationarityKind::MMpcc) && !s.m_stat) continue;
      if (((*sv)->kind == StationarityKind::BAnf || (*sv)->kind == StationarityKind::BMpcc) && !s.b_stat) continue;
      if (((*sv)->kind == StationarityKind::MAnf || (*sv)->kind == StationarityKind::BAnf) && !want_anf) continue;
      st[key_of((*sv)->kind)] = stationarity(**sv);
      out.verdicts.push_back((*sv)->status);
    }
    if (m_anf && m_mpcc && s.m_stat && want_anf) {
      const bool agree = m_anf->status == m_mpcc->status;
      st["m_forms_agree"] = agree;
      if (!agree) out.consistent = false;
      if (m_anf->status == Verdict::Holds && m_mpcc->status == Verdict::Holds) {
        const MultiplierSet to_mpcc_ms =
            translate_multipliers(p, e, mp, mpt, m_anf->multipliers, TranslateDirection::AnfToMpcc);
        const MultiplierSet back = translate_multipliers(p, e, mp, mpt, to_mpcc_ms, TranslateDirection::MpccToAnf);
        const MultiplierSet from_mpcc =
            translate_multipliers(p, e, mp, mpt, m_mpcc->multipliers, TranslateDirection::MpccToAnf);
        const bool identity = back.lam_e == m_anf->multipliers.lam_e && back.lam_i == m_anf->multipliers.lam_i &&
                              back.lam_z == m_anf->multipliers.lam_z &&
                              back.mu_plus == m_anf->multipliers.mu_plus &&
                              back.mu_minus == m_anf->multipliers.mu_minus;
        st["translation"] = {{"anf_to_mpcc", multipliers(to_mpcc_ms)},
                             {"mpcc_to_anf", multipliers(from_mpcc)},
                             {"round_trip_identity", identity}};
        if (!identity) out.consistent = false;
      }
    }
    if (b_anf && b_mpcc && s.b_stat && want_anf) {
      const bool agree = b_anf->status == b_mpcc->status;
      st["b_forms_agree"] = agree;
      if (!agree) out.consistent = false;
    }
    j["stationarity"] = st;
  }

  if (s.expected) {
    // Necessary conditions at annotated minimizers.
    Json nec = Json::array();
    if (pt.minimizer) {
      auto record = [&](const std::string& id, Verdict cond, Verdict concl) {
        std::string outcome = "untestable";
        if (cond == Verdict::Holds && concl == Verdict::Holds) outcome = "consistent";
        if (cond == Verdict::Holds && concl == Verdict::Fails) {
          outcome = "inconsistent";
          out.consistent = false;
        }
        if (cond == Verdict::Fails) outcome = "not applicable";
        nec.push_back({{"id", id}, {"condition", to_string(cond)}, {"conclusion", to_string(concl)},
                       {"outcome", outcome}});
      };
      record("minimizer with AKQ is M-stationary", v->i_anf.acq.status, m_anf->status);
      record("minimizer with branch GCQ is B-stationary", v->i_anf.all_branch_gcq(), b_anf->status);
    }
    j["necessity"] = nec;
    if (!rr->consistent()) out.consistent = false;

    Json ej;
    const ExpectedBlock* blk = nullptr;
    for (const auto& b : pf.expected)
      if (b.point == pt.label) blk = &b;
    std::size_t checked = 0;
    if (blk) {
      auto observed = [&](const std::string& key) -> Verdict {
        if (key == "akq") return v->i_anf.acq.status;
        if (key == "gkq") return v->i_anf.gcq.status;
        if (key == "mpcc_acq") return v->i_mpcc.acq.status;
        if (key == "mpcc_gcq") return v->i_mpcc.gcq.status;
        if (key == "e_akq") return v->e_anf.acq.status;
        if (key == "e_gkq") return v->e_anf.gcq.status;
        if (key == "e_mpcc_acq") return v->e_mpcc.acq.status;
        if (key == "e_mpcc_gcq") return v->e_mpcc.gcq.status;
        if (key == "branch_acq") return v->i_anf.all_branch_acq();
        if (key == "branch_gcq") return v->i_anf.all_branch_gcq();
        if (key == "m_stationary") return m_anf->status;
        return b_anf->status;
      };
      Json table = Json::object();
      for (const auto& [key, want] : blk->verdicts) {
        const Verdict got = observed(key);
        table[key] = {{"expected", to_string(want)}, {"observed", to_string(got)}};
        ++checked;
        if (got != want) out.mismatches.push_back(key + ": expected " + to_string(want) + ", observed " + to_string(got));
      }
      std::vector<std::string> cands;
      for (const auto* c : rr->open_converse_candidates()) cands.push_back(c->id);
      std::vector<std::string> want_c = blk->open_converse;
      std::sort(cands.begin(), cands.end());
      std::sort(want_c.begin(), want_c.end());
      if (cands != want_c) {
        std::string got, want;
        for (const auto& c : cands) got += (got.empty() ? "" : ", ") + c;
        for (const auto& c : want_c) want += (want.empty() ? "" : ", ") + c;
        out.mismatches.push_back("open converse candidates: expected [" + want + "], observed [" + got + "]");
      }
      table["open_converse"] = {{"expected", strings(want_c)}, {"observed", strings(cands)}};
      ej["checks"] = table;
    }
    out.expected_ok = out.mismatches.empty();
    ej["checked"] = checked;
    ej["matches"] = out.expected_ok;
    ej["mismatches"] = strings(out.mismatches);
    ej["relations_consistent"] = rr->consistent();
    j["expected"] = ej;
  }
  return out;
}

int exit_code(const std::vector<PointOutcome>& outs) {
  bool fails = false, unknown = false;
  for (const auto& o : outs) {
    if (!o.consistent || !o.expected_ok) fails = true;
    for (Verdict v : o.verdicts) {
      if (v == Verdict::Fails) fails = true;
      if (v == Verdict::Unknown) unknown = true;
    }
  }
  return fails ? 1 : (unknown ? 2 : 0);
}

// ---------------------------------------------------------------------------
// Recheck

namespace {

struct Checker {
  std::vector<std::string>& failures;
  std::string where;
  bool ok = true;

  void require(bool cond, const std::string& msg) {
    if (!cond) {
      ok = false;
      failures.push_back(where + ": " + msg);
    }
  }
};

std::vector<RatVector> generators_of(const UnionCone& u) {
  std::vector<RatVector> out;
  for (const auto& m : u.members)
    for (auto& d : dd_hrep_to_vrep(m).all_directions()) out.push_back(d);
  return out;
}

void recheck_cq(Checker& ck, const Json& vj, const UnionCone& tangent, const UnionCone& lin) {
  const std::string status = vj.at("status").get<std::string>();
  const std::string name = vj.at("name").get<std::string>();
  const bool acq = name == "AKQ" || name.find("ACQ") != std::string::npos;
  if (status == "unknown") return;
  if (acq && status == "holds") {
    const Json& trees = vj.at("cover_trees");
    ck.require(trees.size() == lin.members.size(), vj["name"].get<std::string>() + ": one cover tree per piece");
    for (std::size_t k = 0; k < std::min<std::size_t>(trees.size(), lin.members.size()); ++k)
      ck.require(verify_cover_tree(tangent, lin.members[k], read_tree(trees[k])),
                 vj["name"].get<std::string>() + ": cover tree " + std::to_string(k + 1) + " does not verify");
    return;
  }
  if (acq && status == "fails") {
    const RatVector w = read_vec(vj.at("witness"));
    ck.require(lin.contains(w), "ACQ witness is not a linearized direction");
    ck.require(!tangent.contains(w), "ACQ witness lies in the tangent cone");
    return;
  }
  if (status == "holds") {
    std::vector<RatVector> tdirs;
    for (const auto& d : vj.at("tangent_directions")) {
      tdirs.push_back(read_vec(d));
      ck.require(tangent.contains(tdirs.back()), "GCQ: listed tangent direction outside the tangent cone");
    }
    std::vector<RatVector> covered;
    for (const auto& c : vj.at("combinations")) {
      const RatVector d = read_vec(c.at("direction"));
      const RatVector w = read_vec(c.at("weights"));
      ck.require(w.size() == tdirs.size(), "GCQ: weight count mismatch");
      if (w.size() != tdirs.size()) continue;
      RatVector sum(d.size());
      for (std::size_t k = 0; k < w.size(); ++k) {
        ck.require(w[k].sign() >= 0, "GCQ: negative weight");
        sum = sum + w[k] * tdirs[k];
      }
      ck.require(sum == d, "GCQ: combination does not reproduce its direction");
      covered.push_back(d);
    }
    for (const auto& g : generators_of(lin))
      ck.require(std::find(covered.begin(), covered.end(), g) != covered.end(),
                 "GCQ: linearized generator " + to_string(g) + " has no combination");
    return;
  }
  const RatVector omega = read_vec(vj.at("witness"));
  const RatVector d = read_vec(vj.at("separating_direction"));
  for (const auto& g : generators_of(tangent))
    ck.require(dot(omega, g).sign() >= 0, "GCQ witness is negative on a tangent direction");
  ck.require(lin.contains(d), "GCQ separating direction is not linearized");
  ck.require(dot(omega, d).sign() < 0, "GCQ witness does not separate");
}

void recheck_analysis(Checker& ck, const FormulationAnalysis& f, const Json& fj) {
  const Json& lu = fj.at("lin_union");
  ck.require(lu.size() == f.lin_union.members.size(), "linearized union piece count differs");
  for (std::size_t k = 0; k < std::min<std::size_t>(lu.size(), f.lin_union.members.size()); ++k)
    ck.require(cones_equal(read_cone(lu[k]), f.lin_union.members[k]), "linearized piece differs");
  const Json& bs = fj.at("branches");
  ck.require(bs.size() == f.branches.size(), "branch count differs");
  for (std::size_t k = 0; k < std::min<std::size_t>(bs.size(), f.branches.size()); ++k) {
    const BranchAnalysis& b = f.branches[k];
    const Json& bj = bs[k];
    ck.require(bj.at("label") == b.problem.label, "branch label differs");
    ck.require(cones_equal(read_cone(bj.at("lin")), lin_cone_branch(b.problem)), "branch linearized cone differs");
    ck.require(bj.at("resolved").get<bool>() == b.resolved, "branch resolution differs");
    const std::string st = bj.at("tangent_status").get<std::string>();
    ck.require(st == to_string(b.tangent_status), "tangent status differs");
    if (bj.contains("mfcq_direction")) {
      const RatVector d = read_vec(bj["mfcq_direction"]);
      const SmoothBranchProblem& pr = b.problem;
      for (const auto& q : pr.equalities) ck.require(dot(q.gradient(pr.anchor), d).is_zero(), "MFCQ direction leaves an equality");
      for (const auto& q : pr.inequalities)
        if (q.value(pr.anchor).is_zero())
          ck.require(dot(q.gradient(pr.anchor), d).sign() > 0, "MFCQ direction not strictly feasible");
    }
    if (b.resolved) {
      const Json& tj = bj.at("tangent");
      ck.require(tj.size() == b.tangent.members.size(), "tangent piece count differs");
      for (std::size_t q = 0; q < std::min<std::size_t>(tj.size(), b.tangent.members.size()); ++q) {
        const PolyCone piece = read_cone(tj[q]);
        ck.require(cones_equal(piece, b.tangent.members[q]), "tangent piece differs");
        ck.require(cone_contains(b.lin, piece), "tangent piece leaves the linearized cone");
      }
    }
  }
}

template <class Build>
void recheck_refutations(Checker& ck, const Json& sj, const std::string& alphabet, std::size_t ndeg, Build&& build) {
  std::set<std::string> seen;
  for (const auto& r : sj.at("refutations")) {
    const std::string cases = r.at("cases").get<std::string>();
    seen.insert(cases);
    LpResult res;
    res.status = LpStatus::Infeasible;
    res.dual_eq = read_vec(r.at("dual_eq"));
    res.dual_ge = read_vec(r.at("dual_ge"));
    std::string why;
    ck.require(certificate_valid(build(cases), res, &why), "case " + cases + ": " + why);
  }
  std::size_t total = 1;
  for (std::size_t k = 0; k < ndeg; ++k) total *= alphabet.size();
  ck.require(seen.size() == total, "refutations do not cover every case combination");
}

MultiplierSet read_multipliers(const Json& j) {
  MultiplierSet m;
  m.lam_e = read_vec(j.at("lam_e"));
  m.lam_i = read_vec(j.at("lam_i"));
  m.lam_z = read_vec(j.at("lam_z"));
  if (j.contains("mu_u")) m.mu_u = read_vec(j["mu_u"]);
  if (j.contains("mu_v")) m.mu_v = read_vec(j["mu_v"]);
  if (j.contains("mu_plus")) m.mu_plus = read_vec(j["mu_plus"]);
  if (j.contains("mu_minus")) m.mu_minus = read_vec(j["mu_minus"]);
  return m;
}

void recheck_b(Checker& ck, const Json& sj, const std::vector<SmoothBranchProblem>& branches) {
  const Json& bs = sj.at("branches");
  ck.require(bs.size() == branches.size(), "B-stationarity branch count differs");
  bool all = true;
  for (std::size_t k = 0; k < std::min<std::size_t>(bs.size(), branches.size()); ++k) {
    BranchStationarity b;
    b.label = bs[k].at("label").get<std::string>();
    b.stationary = bs[k].at("stationary").get<bool>();
    b.gradient = read_vec(bs[k].at("gradient"));
    if (b.stationary) {
      b.eq_mult = read_vec(bs[k].at("eq_mult"));
      b.ge_mult = read_vec(bs[k].at("ge_mult"));
    } else {
      b.descent = read_vec(bs[k].at("descent"));
    }
    all = all && b.stationary;
    std::string why;
    ck.require(b.label == branches[k].label, "B-stationarity branch label differs");
    ck.require(valid_branch_stationarity(branches[k], b, &why), "branch " + b.label + ": " + why);
  }
  ck.require((sj.at("status") == "holds") == all, "B-stationarity status does not match branch evidence");
}

}  // namespace

bool recheck_points(const ProblemFile& pf, const Json& points, std::vector<std::string>& failures) {
  const AbsNormalProgram& p = pf.program;
  bool ok = true;
  for (const auto& pj : points) {
    Checker ck{failures, pj.value("label", std::string("?"))};
    try {
      ProblemPoint pt;
      pt.label = pj.at("label").get<std::string>();
      pt.t = read_vec(pj.at("t"));
      if (pj.contains("w_signs")) pt.w_signs = pj["w_signs"].get<std::vector<int>>();
      const EvalResult e = eval(p, pt.t);
      ck.require(e.feasible(), "point is not feasible");
      if (!e.feasible()) {
        ok = false;
        continue;
      }
      AnalysisOptions opts;
      opts.w_signs = pt.w_signs;
      opts.point_label = pt.label;
      const PointAnalysis pa = analyze_point(p, pt.t, pf.annotations, opts);
      if (pj.contains("analysis"))
        for (FormulationKind k : kKinds)
          if (pj["analysis"].contains(to_string(k))) recheck_analysis(ck, pa.get(k), pj["analysis"][to_string(k)]);
      if (pj.contains("cq")) {
        for (FormulationKind k : kKinds) {
          if (!pj["cq"].contains(to_string(k))) continue;
          const FormulationAnalysis& f = pa.get(k);
          const Json& fj = pj["cq"][to_string(k)];
          const UnionCone tangent = formulation_tangent_union(f);
          for (const char* key : {"acq", "gcq"})
            if (fj.contains(key)) recheck_cq(ck, fj[key], tangent, f.lin_union);
          if (fj.contains("branches")) {
            const Json& bs = fj["branches"];
            ck.require(bs.size() == f.branches.size(), "branch verdict count differs");
            for (std::size_t b = 0; b < std::min<std::size_t>(bs.size(), f.branches.size()); ++b) {
              UnionCone lin(f.dim);
              lin.add(f.branches[b].problem.label, f.branches[b].lin);
              for (const char* key : {"acq", "gcq"}) recheck_cq(ck, bs[b][key], f.branches[b].tangent, lin);
            }
          }
        }
      }
      if (pj.contains("stationarity")) {
        const Json& st = pj["stationarity"];
        const MpccProgram& mp = pa.mpcc_i;
        const MpccPoint& mpt = pa.point_i_mpcc;
        if (st.contains("m_anf")) {
          const Json& sj = st["m_anf"];
          std::string why;
          if (sj["status"] == "holds")
            ck.require(valid_m_multipliers_anf(p, e, read_multipliers(sj.at("multipliers")), &why), why);
          if (sj["status"] == "fails")
            recheck_refutations(ck, sj, "+-pn", e.alpha.size(),
                                [&](const std::string& c) { return m_stationarity_lp_anf(p, e, c); });
        }
        if (st.contains("m_mpcc")) {
          const Json& sj = st["m_mpcc"];
          std::string why;
          if (sj["status"] == "holds")
            ck.require(valid_m_multipliers_mpcc(mp, mpt, read_multipliers(sj.at("multipliers")), &why), why);
          if (sj["status"] == "fails")
            recheck_refutations(ck, sj, "uvb", mpt.degenerate.size(),
                                [&](const std::string& c) { return m_stationarity_lp_mpcc(mp, mpt, c); });
        }
        if (st.contains("translation")) {
          std::string why;
          ck.require(valid_m_multipliers_mpcc(mp, mpt, read_multipliers(st["translation"]["anf_to_mpcc"]), &why),
                     "translated multipliers: " + why);
          ck.require(valid_m_multipliers_anf(p, e, read_multipliers(st["translation"]["mpcc_to_anf"]), &why),
                     "translated multipliers: " + why);
        }
        if (st.contains("b_anf")) recheck_b(ck, st["b_anf"], enumerate_anf_branches(p, e));
        if (st.contains("b_mpcc")) recheck_b(ck, st["b_mpcc"], enumerate_mpcc_branches(mp, mpt));
      }
    } catch (const std::exception& ex) {
      ck.require(false, std::string("malformed report: ") + ex.what());
    }
    ok = ok && ck.ok;
  }
  return ok;
}

// ---------------------------------------------------------------------------
// Text rendering

namespace {

std::string paint(const std::string& s, bool color) {
  if (!color) return s;
  const char* code = s == "holds" || s == "consistent" || s == "match" ? "32"
                     : s == "fails" || s == "inconsistent" || s == "MISMATCH" ? "31"
                     : s == "unknown" || s == "untestable" ? "33"
                                                             : nullptr;
  if (!code) return s;
  return std::string("\x1b[") + code + "m" + s + "\x1b[0m";
}

std::string pad(const std::string& s, std::size_t w) {
  // Column width counts code points so that the sigma labels line up.
  std::size_t cps = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++cps;
  return cps >= w ? s + " " : s + std::string(w - cps, ' ');
}

std::string join_vec(const Json& v) {
  std::string out;
  for (const auto& x : v) out += (out.empty() ? "" : ", ") + (x.is_string() ? x.get<std::string>() : x.dump());
  return "(" + out + ")";
}

void render_point(std::ostringstream& os, const Json& pj, bool color) {
  os << "point " << pj["label"].get<std::string>() << "  t = " << join_vec(pj["t"]);
  if (pj.value("minimizer", false)) os << "  [minimizer]";
  os << "\n";
  if (pj.contains("eval")) {
    const Json& e = pj["eval"];
    os << "  z = " << join_vec(e["z"]) << "  " << e["sigma"].get<std::string>()
       << "  active switching " << e["active_switching"].dump() << "  active inequalities "
       << e["active_inequalities"].dump() << "\n";
  }
  if (pj.contains("cq")) {
    for (const auto& [form, fj] : pj["cq"].items()) {
      for (const char* key : {"acq", "gcq"})
        if (fj.contains(key))
          os << "  " << pad(form, 8) << pad(fj[key]["name"].get<std::string>(), 12)
             << paint(fj[key]["status"].get<std::string>(), color) << "\n";
      if (fj.contains("branches"))
        for (const auto& b : fj["branches"])
          os << "  " << pad(form, 8) << pad(b["label"].get<std::string>(), 12) << "ACQ "
             << paint(b["acq"]["status"].get<std::string>(), color) << "  GCQ "
             << paint(b["gcq"]["status"].get<std::string>(), color) << "\n";
    }
  }
  if (pj.contains("relations")) {
    const Json& r = pj["relations"];
    std::size_t untestable = 0;
    for (const auto& c : r["checks"])
      if (c["outcome"] == "untestable") ++untestable;
    os << "  relations " << paint(r["consistent"].get<bool>() ? "consistent" : "inconsistent", color) << " ("
       << r["checks"].size() << " arrows, " << untestable << " untestable, " << r["structural"].size()
       << " structural checks)\n";
    for (const auto& c : r["checks"])
      if (c["outcome"] == "inconsistent")
        os << "    " << paint("inconsistent", color) << ": " << c["statement"].get<std::string>() << "\n";
    for (const auto& c : r["open_converse_candidates"])
      os << "    converse fails here: " << c.get<std::string>() << "\n";
  }
  if (pj.contains("stationarity"))
    for (const auto& [key, sj] : pj["stationarity"].items())
      if (sj.is_object() && sj.contains("status"))
        os << "  " << pad(sj["kind"].get<std::string>(), 40) << paint(sj["status"].get<std::string>(), color)
           << "\n";
  if (pj.contains("expected")) {
    const Json& ej = pj["expected"];
    os << "  expected " << paint(ej["matches"].get<bool>() ? "match" : "MISMATCH", color) << " (" << ej["checked"]
       << " verdicts)\n";
    for (const auto& m : ej["mismatches"]) os << "    " << m.get<std::string>() << "\n";
  }
}

}  // namespace

std::string render_table(const Json& report, bool color) {
  std::ostringstream os;
  auto one_file = [&](const Json& fj) {
    os << "== " << fj["problem"]["name"].get<std::string>() << " (" << fj["problem"]["file"].get<std::string>()
       << ")\n";
    for (const auto& pj : fj["points"]) render_point(os, pj, color);
  };
  if (report.contains("files")) {
    for (const auto& fj : report["files"]) one_file(fj);
  } else if (report.contains("points")) {
    one_file(report);
  } else {
    os << report.dump(2) << "\n";
  }
  if (report.contains("summary")) {
    const Json& s = report["summary"];
    os << "summary: " << paint(s["status"].get<std::string>(), color) << " (exit " << s["exit_code"] << ")\n";
  }
  return os.str();
}

}  // namespace anfcq::report
