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

// Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <unistd.h>

#include "corpus_support.hpp"
#include "test_support.hpp"

#include "anfcq/cones.hpp"
#include "anfcq/cq.hpp"
#include "anfcq/lp.hpp"
#include "anfcq/polycone.hpp"
#include "anfcq/stationarity.hpp"

using namespace anfcq;

namespace {

// Pinned limits.
constexpr double kLpSeconds = 60.0;
constexpr double kConeSeconds = 60.0;
constexpr int kLpCount = 1000;
constexpr std::size_t kLpMaxVars = 8;
constexpr std::size_t kOracleMaxVars = 5;  // vertex enumeration cost grows combinatorially
constexpr int kConeCount = 200;
constexpr std::size_t kConeMaxDim = 5;
constexpr long kConeMaxRows = 8;
constexpr std::size_t kSamplesPerProblem = 100;

const FormulationKind kForms[] = {FormulationKind::IAnf, FormulationKind::EAnf, FormulationKind::IMpcc,
                                  FormulationKind::EMpcc};

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void fail(const std::string& why) {
    pass = false;
    if (notes.size() < 8) notes.push_back(why);
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct CorpusPoint {
  std::string problem;
  const ProblemFile* pf;
  const ProblemPoint* pt;
  PointAnalysis pa;
  PointVerdicts v;
};

std::vector<ProblemFile> g_files;
std::vector<CorpusPoint> g_points;

void load_corpus() {
  for (const auto& name : testsupport::corpus_names()) g_files.push_back(testsupport::load_corpus(name));
  for (const auto& pf : g_files)
    for (const auto& pt : pf.points) {
      AnalysisOptions opts;
      opts.point_label = pt.label;
      opts.w_signs = pt.w_signs;
      CorpusPoint cp{pf.program.name, &pf, &pt, analyze_point(pf.program, pt.t, pf.annotations, opts), {}};
      cp.v = compute_verdicts(cp.pa);
      g_points.push_back(std::move(cp));
    }
}

std::string where(const CorpusPoint& cp) { return cp.problem + "@" + cp.pt->label; }

// 1. Random LPs: certificates re-validate; feasibility and optimal values
// agree with vertex enumeration when the region is bounded.
Outcome lp_kernel(std::string& detail) {
  Outcome o;
  testsupport::Rng rng(20261018);
  auto t0 = std::chrono::steady_clock::now();
  int oracle_checked = 0;
  for (int k = 0; k < kLpCount; ++k) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, static_cast<long>(kLpMaxVars)));
    const bool boxed = n <= kOracleMaxVars && rng.coin();
    LpProblem lp = testsupport::random_lp(rng, n, boxed);
    LpResult r = lp_solve(lp);
    std::string why;
    if (!certificate_valid(lp, r, &why)) o.fail("lp " + std::to_string(k) + ": " + why);
    if (!boxed) continue;
    ++oracle_checked;
    auto vo = testsupport::vertex_oracle(lp);
    const bool feasible = r.status != LpStatus::Infeasible;
    if (feasible != vo.feasible) o.fail("lp " + std::to_string(k) + ": feasibility disagrees with vertex oracle");
    if (r.status == LpStatus::Unbounded) o.fail("lp " + std::to_string(k) + ": unbounded on a bounded region");
    if (r.status == LpStatus::Optimal && vo.feasible && r.value != vo.best)
      o.fail("lp " + std::to_string(k) + ": optimum differs from vertex oracle");
  }
  double secs = seconds_since(t0);
  if (secs >= kLpSeconds) o.fail("took " + std::to_string(secs) + " s");
  std::ostringstream d;
  d << kLpCount << " LPs, " << oracle_checked << " against the vertex oracle, " << secs << " s";
  detail = d.str();
  return o;
}

// 2. dual(dual(C)) = C on random cones.
Outcome biduality(std::string& detail) {
  Outcome o;
  testsupport::Rng rng(7001);
  auto t0 = std::chrono::steady_clock::now();
  for (int k = 0; k < kConeCount; ++k) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, static_cast<long>(kConeMaxDim)));
    PolyCone c(n);
    const long rows = rng.integer(0, kConeMaxRows);
    for (long i = 0; i < rows; ++i) {
      RatVector r = rng.sparse_int_vector(n, 3);
      if (rng.integer(0, 4) == 0) c.add_eq(r);
      else c.add_ge(r);
    }
    PolyCone dd = dual_cone(dual_cone(c));
    if (!cone_contains(c, dd) || !cone_contains(dd, c)) o.fail("cone " + std::to_string(k) + ": containment");
    // The same question answered by plain membership of generators.
    for (const auto& g : dd_hrep_to_vrep(c).all_directions())
      if (!dd.contains(g)) o.fail("cone " + std::to_string(k) + ": generator of C outside dual(dual(C))");
    for (const auto& g : dd_hrep_to_vrep(dd).all_directions())
      if (!c.contains(g)) o.fail("cone " + std::to_string(k) + ": generator of dual(dual(C)) outside C");
  }
  double secs = seconds_since(t0);
  if (secs >= kConeSeconds) o.fail("took " + std::to_string(secs) + " s");
  std::ostringstream d;
  d << kConeCount << " cones, " << secs << " s";
  detail = d.str();
  return o;
}

// 3. Each formulation's linearized cone equals the union of its branch cones.
Outcome decomposition(std::string& detail) {
  Outcome o;
  testsupport::Rng rng(303);
  std::size_t checks = 0;
  for (const auto& cp : g_points)
    for (auto k : kForms) {
      const auto& f = cp.pa.get(k);
      auto sc = check_decomposition(f);
      ++checks;
      if (!sc.ok) o.fail(where(cp) + " " + to_string(k) + ": " + sc.detail);
      // Sampled cross-check: generators on either side fall in the other.
      UnionCone branches(f.dim);
      for (const auto& b : f.branches) branches.add(b.problem.label, b.lin);
      for (const auto& m : f.lin_union.members)
        for (const auto& g : dd_hrep_to_vrep(m).all_directions())
          if (!branches.contains(g)) o.fail(where(cp) + " " + to_string(k) + ": lin generator outside branches");
      for (const auto& m : branches.members)
        for (const auto& g : dd_hrep_to_vrep(m).all_directions())
          if (!f.lin_union.contains(g)) o.fail(where(cp) + " " + to_string(k) + ": branch generator outside lin");
    }
  detail = std::to_string(checks) + " formulation checks over " + std::to_string(g_points.size()) + " points";
  return o;
}

// 4. phi round trips on sampled feasible points, and psi carries branch cone
// generators of the counterpart onto those of the abs-normal branch.
Outcome homeomorphism(std::string& detail) {
  Outcome o;
  std::size_t min_samples = SIZE_MAX, gens = 0;
  for (const auto& pf : g_files) {
    auto mp = to_mpcc(pf.program);
    auto sp = to_slack(pf.program);
    auto mpe = to_mpcc(sp.lifted);
    auto pts = testsupport::sample_feasible_points(pf, kSamplesPerProblem, 99);
    min_samples = std::min(min_samples, pts.size());
    if (pts.size() < kSamplesPerProblem)
      o.fail(pf.program.name + ": only " + std::to_string(pts.size()) + " feasible samples");
    for (const auto& t : pts) {
      auto e = eval(pf.program, t);
      RatVector x = t;
      x.insert(x.end(), e.z.begin(), e.z.end());
      RatVector y = phi_inv(pf.program, mp, x);
      if (!is_feasible_mpcc(mp, y)) o.fail(pf.program.name + ": phi_inv(x) infeasible");
      if (phi(pf.program, mp, y) != x) o.fail(pf.program.name + ": phi(phi_inv(x)) != x");
      if (phi_inv(pf.program, mp, phi(pf.program, mp, y)) != y) o.fail(pf.program.name + ": phi_inv(phi(y)) != y");
      // The lifted program as well.
      RatVector tl = lift_point(pf.program, t);
      auto el = eval(sp.lifted, tl);
      RatVector xl = tl;
      xl.insert(xl.end(), el.z.begin(), el.z.end());
      RatVector yl = phi_inv(sp.lifted, mpe, xl);
      if (phi(sp.lifted, mpe, yl) != xl) o.fail(pf.program.name + ": lifted round trip");
    }
  }
  for (const auto& cp : g_points)
    for (auto [ka, km, mpp] : {std::tuple{FormulationKind::IAnf, FormulationKind::IMpcc, &cp.pa.mpcc_i},
                               std::tuple{FormulationKind::EAnf, FormulationKind::EMpcc, &cp.pa.mpcc_e}}) {
      const auto& fa = cp.pa.get(ka);
      const auto& fm = cp.pa.get(km);
      if (fa.branches.size() != fm.branches.size()) {
        o.fail(where(cp) + ": branch counts differ");
        continue;
      }
      for (std::size_t k = 0; k < fa.branches.size(); ++k) {
        auto ga = dd_hrep_to_vrep(fa.branches[k].lin);
        auto gm = dd_hrep_to_vrep(fm.branches[k].lin);
        const std::string tag = where(cp) + " " + fa.branches[k].problem.label;
        if (ga.rays.size() != gm.rays.size() || ga.span_dim() != gm.span_dim()) o.fail(tag + ": generator counts");
        std::vector<RatVector> rays, lin;
        for (const auto& r : gm.rays) rays.push_back(psi(*mpp, r));
        for (const auto& r : gm.lineality) lin.push_back(psi(*mpp, r));
        for (const auto& r : rays)
          if (!fa.branches[k].lin.contains(r)) o.fail(tag + ": psi image leaves the branch cone");
        for (const auto& r : ga.all_directions()) {
          ++gens;
          if (!testsupport::in_generated_cone(r, rays, lin)) o.fail(tag + ": generator not reached by psi");
        }
      }
    }
  detail = "at least " + std::to_string(min_samples) + " samples per problem, " + std::to_string(gens) +
           " branch generators mapped";
  return o;
}

// 5. Proven relations never contradict each other.
Outcome relations(std::string& detail) {
  Outcome o;
  std::size_t n = 0, tested = 0;
  for (const auto& cp : g_points) {
    auto rel = verify_relations(cp.pa, cp.v);
    for (const auto& c : rel.checks) {
      ++n;
      if (c.outcome != RelationCheck::Outcome::Untestable) ++tested;
      if (c.outcome == RelationCheck::Outcome::Inconsistent) o.fail(where(cp) + ": " + c.id);
    }
    for (const auto& s : rel.structural)
      if (!s.ok) o.fail(where(cp) + ": " + s.id + " " + s.detail);
  }
  detail = std::to_string(n) + " relation checks, " + std::to_string(tested) + " testable";
  return o;
}

const CorpusPoint* find(const std::string& problem, const std::string& label) {
  for (const auto& cp : g_points)
    if (cp.problem == problem && cp.pt->label == label) return &cp;
  return nullptr;
}

// 6. Known verdicts on the reference problems.
Outcome counterexamples(std::string& detail) {
  Outcome o;
  const auto* e3 = find("E3", "origin");
  const auto* e4 = find("E4", "origin");
  if (!e3 || !e4) {
    o.fail("E3 or E4 origin missing from the corpus");
    return o;
  }
  const auto& f3 = e3->pa.i_anf;
  const auto& a3 = e3->v.i_anf.acq;
  const auto& g3 = e3->v.i_anf.gcq;
  if (a3.status != Verdict::Fails) o.fail("E3 AKQ is " + to_string(a3.status));
  else if (!f3.lin_union.contains(a3.witness) || formulation_tangent_union(f3).contains(a3.witness))
    o.fail("E3 AKQ witness does not separate");
  if (g3.status != Verdict::Fails) o.fail("E3 GKQ is " + to_string(g3.status));
  else {
    for (const auto& piece : formulation_tangent_union(f3).members)
      for (const auto& g : dd_hrep_to_vrep(piece).all_directions())
        if (dot(g3.witness, g) < Rational(0)) o.fail("E3 GKQ witness not in the tangent dual");
    if (!f3.lin_union.contains(g3.separating) || dot(g3.witness, g3.separating) >= Rational(0))
      o.fail("E3 GKQ witness not separated from the linearized cone");
  }
  if (e4->v.i_anf.acq.status != Verdict::Fails) o.fail("E4 AKQ is " + to_string(e4->v.i_anf.acq.status));
  if (e4->v.i_anf.gcq.status != Verdict::Holds) o.fail("E4 GKQ is " + to_string(e4->v.i_anf.gcq.status));

  std::size_t board = 0;
  for (const auto& cp : g_points) {
    if (cp.problem != "E1" && cp.problem != "E2") continue;
    for (auto k : kForms) {
      const auto& fv = cp.v.get(k);
      std::vector<const CQVerdict*> all{&fv.acq, &fv.gcq};
      for (const auto& b : fv.branch_acq) all.push_back(&b);
      for (const auto& b : fv.branch_gcq) all.push_back(&b);
      for (const auto* v : all) {
        ++board;
        if (v->status != Verdict::Holds)
          o.fail(where(cp) + " " + to_string(k) + " " + v->name + " " + v->branch_label + " is " +
                 to_string(v->status));
      }
    }
  }
  detail = "E3 witness " + to_string(a3.witness) + ", E4 AKQ fails / GKQ holds, " + std::to_string(board) +
           " E1/E2 verdicts hold";
  return o;
}

// 7. Stationarity agrees across forms; multipliers translate both ways;
// minimizers with AKQ are M-stationary.
Outcome stationarity(std::string& detail) {
  Outcome o;
  std::size_t translated = 0, minimizers = 0;
  for (const auto& cp : g_points) {
    const auto& p = cp.pa.program;
    const auto& e = cp.pa.eval_i;
    const auto& mp = cp.pa.mpcc_i;
    const auto& pt = cp.pa.point_i_mpcc;
    auto ma = check_m_stationary_anf(p, e);
    auto mm = check_m_stationary_mpcc(mp, pt);
    if (ma.status != mm.status)
      o.fail(where(cp) + ": M-stationarity " + to_string(ma.status) + " vs " + to_string(mm.status));
    auto ba = check_b_stationary_anf(p, e);
    auto bm = check_b_stationary_mpcc(mp, pt);
    if (ba.status != bm.status)
      o.fail(where(cp) + ": B-stationarity " + to_string(ba.status) + " vs " + to_string(bm.status));
    if (mm.status == Verdict::Holds) {
      auto a = translate_multipliers(p, e, mp, pt, mm.multipliers, TranslateDirection::MpccToAnf);
      auto back = translate_multipliers(p, e, mp, pt, a, TranslateDirection::AnfToMpcc);
      if (!valid_m_multipliers_anf(p, e, a) || back.lam_e != mm.multipliers.lam_e ||
          back.lam_i != mm.multipliers.lam_i || back.lam_z != mm.multipliers.lam_z ||
          back.mu_u != mm.multipliers.mu_u || back.mu_v != mm.multipliers.mu_v)
        o.fail(where(cp) + ": counterpart multipliers do not round trip");
      ++translated;
    }
    if (ma.status == Verdict::Holds) {
      auto m = translate_multipliers(p, e, mp, pt, ma.multipliers, TranslateDirection::AnfToMpcc);
      auto back = translate_multipliers(p, e, mp, pt, m, TranslateDirection::MpccToAnf);
      if (!valid_m_multipliers_mpcc(mp, pt, m) || back.lam_e != ma.multipliers.lam_e ||
          back.lam_z != ma.multipliers.lam_z || back.mu_plus != ma.multipliers.mu_plus ||
          back.mu_minus != ma.multipliers.mu_minus)
        o.fail(where(cp) + ": abs-normal multipliers do not round trip");
      ++translated;
    }
    if (cp.pt->minimizer && cp.v.i_anf.acq.status == Verdict::Holds) {
      ++minimizers;
      if (ma.status != Verdict::Holds) o.fail(where(cp) + ": minimizer with AKQ is not M-stationary");
    }
  }
  detail = std::to_string(g_points.size()) + " points, " + std::to_string(translated) + " translations, " +
           std::to_string(minimizers) + " minimizers with AKQ";
  return o;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 8. Two consecutive corpus runs write the same bytes.
Outcome determinism(std::string& detail) {
  Outcome o;
  auto dir = std::filesystem::temp_directory_path() / ("anfcq_accept_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::string outs[2];
  for (int k = 0; k < 2; ++k) {
    auto file = (dir / ("run" + std::to_string(k) + ".json")).string();
    std::string cmd = std::string("\"") + ANFCQ_CLI_PATH + "\" corpus run --json --dir \"" + ANFCQ_CORPUS_DIR +
                      "\" --out \"" + file + "\" > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    if (rc == -1) o.fail("could not start the CLI");
    outs[k] = slurp(file);
  }
  if (outs[0].empty()) o.fail("empty report");
  if (outs[0] != outs[1]) o.fail("reports differ");
  detail = std::to_string(outs[0].size()) + " bytes per report";
  std::filesystem::remove_all(dir);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)(std::string&);
  };
  const Criterion criteria[] = {
      {1, "LP kernel certificates and vertex oracle", lp_kernel},
      {2, "double-description biduality", biduality},
      {3, "linearized cone decomposition", decomposition},
      {4, "phi/psi correspondence", homeomorphism},
      {5, "constraint qualification relations", relations},
      {6, "reference verdicts E1-E4", counterexamples},
      {7, "stationarity across formulations", stationarity},
      {8, "corpus run determinism", determinism},
  };
  try {
    load_corpus();
  } catch (const std::exception& ex) {
    std::cout << "corpus failed to load: " << ex.what() << "\n";
    return 1;
  }
  bool all = true;
  for (const auto& c : criteria) {
    std::string detail;
    Outcome o;
    try {
      o = c.run(detail);
    } catch (const std::exception& ex) {
      o.fail(std::string("exception: ") + ex.what());
    }
    all = all && o.pass;
    std::cout << "criterion " << c.id << " " << (o.pass ? "PASS" : "FAIL") << "  " << c.name;
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << "\n";
    for (const auto& n : o.notes) std::cout << "    " << n << "\n";
  }
  return all ? 0 : 1;
}
