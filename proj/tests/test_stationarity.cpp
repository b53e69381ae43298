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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <functional>
#include <set>

#include "doctest.h"
#include "corpus_support.hpp"
#include "test_support.hpp"

#include "anfcq/stationarity.hpp"

using namespace anfcq;
using testsupport::vec;

namespace {

struct At {
  ProblemFile pf;
  EvalResult e;
  MpccProgram mp;
  MpccPoint pt;
};

At at(const std::string& name, const RatVector& t) {
  At a{testsupport::load_corpus(name), {}, {}, {}};
  a.e = eval(a.pf.program, t);
  a.mp = to_mpcc(a.pf.program);
  RatVector x = t;
  x.insert(x.end(), a.e.z.begin(), a.e.z.end());
  a.pt = make_mpcc_point(a.mp, phi_inv(a.pf.program, a.mp, x));
  return a;
}

std::size_t power(std::size_t b, std::size_t k) {
  std::size_t r = 1;
  while (k--) r *= b;
  return r;
}

// Every refutation must be a valid Farkas certificate for its own case LP,
// and together they must cover every case combination.
void check_refutations(const StationarityVerdict& v, const std::function<LpProblem(const CaseCode&)>& lp_of,
                       std::size_t alphabet) {
  REQUIRE(v.status == Verdict::Fails);
  CHECK(v.refutations.size() == power(alphabet, v.degenerate.size()));
  std::set<CaseCode> seen;
  for (const auto& r : v.refutations) {
    LpResult res;
    res.status = LpStatus::Infeasible;
    res.dual_eq = r.dual_eq;
    res.dual_ge = r.dual_ge;
    std::string why;
    CHECK_MESSAGE(certificate_valid(lp_of(r.cases), res, &why), why);
    seen.insert(r.cases);
  }
  CHECK(seen.size() == v.refutations.size());
}

}  // namespace

TEST_CASE("the kink of t2 = |t1| is M-stationary with hand-computed multipliers") {
  // Counterpart gradient equation over (t1, t2, u, v):
  //   (0,1,0,0) + lam_e (0,1,-1,-1) + lam_z (1,0,-1,1) - mu_u e_u - mu_v e_v = 0
  // forces lam_z = 0, lam_e = -1, mu_u = mu_v = 1.
  auto a = at("E1", vec({0, 0}));
  auto vm = check_m_stationary_mpcc(a.mp, a.pt);
  REQUIRE(vm.status == Verdict::Holds);
  CHECK(vm.multipliers.lam_e == vec({-1}));
  CHECK(vm.multipliers.lam_z == vec({0}));
  CHECK(vm.multipliers.mu_u == vec({1}));
  CHECK(vm.multipliers.mu_v == vec({1}));
  CHECK(vm.cases == "b");

  auto va = check_m_stationary_anf(a.pf.program, a.e);
  REQUIRE(va.status == Verdict::Holds);
  CHECK(va.multipliers.lam_e == vec({-1}));
  CHECK(va.multipliers.mu_plus == vec({1}));
  CHECK(va.multipliers.mu_minus == vec({1}));
}

TEST_CASE("a smooth point off the minimizer is not M-stationary") {
  auto a = at("E1", vec({2, 2}));
  auto vm = check_m_stationary_mpcc(a.mp, a.pt);
  check_refutations(vm, [&](const CaseCode& c) { return m_stationarity_lp_mpcc(a.mp, a.pt, c); }, 3);
  auto va = check_m_stationary_anf(a.pf.program, a.e);
  check_refutations(va, [&](const CaseCode& c) { return m_stationarity_lp_anf(a.pf.program, a.e, c); }, 4);
}

TEST_CASE("squared kink: every case combination is refuted") {
  auto a = at("E3", vec({0, 0}));
  auto vm = check_m_stationary_mpcc(a.mp, a.pt);
  check_refutations(vm, [&](const CaseCode& c) { return m_stationarity_lp_mpcc(a.mp, a.pt, c); }, 3);
  auto va = check_m_stationary_anf(a.pf.program, a.e);
  check_refutations(va, [&](const CaseCode& c) { return m_stationarity_lp_anf(a.pf.program, a.e, c); }, 4);
  CHECK(va.cases_tried == 4);
}

TEST_CASE("multipliers are rejected when perturbed") {
  auto a = at("E1", vec({0, 0}));
  auto vm = check_m_stationary_mpcc(a.mp, a.pt);
  REQUIRE(vm.status == Verdict::Holds);
  CHECK(valid_m_multipliers_mpcc(a.mp, a.pt, vm.multipliers));
  MultiplierSet bad = vm.multipliers;
  bad.lam_e[0] = 0;
  std::string why;
  CHECK_FALSE(valid_m_multipliers_mpcc(a.mp, a.pt, bad, &why));
  CHECK_FALSE(why.empty());
  bad = vm.multipliers;
  bad.mu_u[0] = -1;
  bad.lam_z[0] = 0;
  CHECK_FALSE(valid_m_multipliers_mpcc(a.mp, a.pt, bad));
  CHECK_THROWS_AS(translate_multipliers(a.pf.program, a.e, a.mp, a.pt, bad, TranslateDirection::MpccToAnf),
                  InvalidMultipliersError);
}

TEST_CASE("multipliers translate between forms and back") {
  auto a = at("E1", vec({0, 0}));
  auto vm = check_m_stationary_mpcc(a.mp, a.pt);
  REQUIRE(vm.status == Verdict::Holds);
  auto anf = translate_multipliers(a.pf.program, a.e, a.mp, a.pt, vm.multipliers, TranslateDirection::MpccToAnf);
  CHECK(valid_m_multipliers_anf(a.pf.program, a.e, anf));
  auto back = translate_multipliers(a.pf.program, a.e, a.mp, a.pt, anf, TranslateDirection::AnfToMpcc);
  CHECK(back.lam_e == vm.multipliers.lam_e);
  CHECK(back.lam_z == vm.multipliers.lam_z);
  CHECK(back.mu_u == vm.multipliers.mu_u);
  CHECK(back.mu_v == vm.multipliers.mu_v);
}

TEST_CASE("the case limit yields Unknown") {
  auto a = at("E1", vec({0, 0}));
  StationarityLimits lim;
  lim.max_degenerate = 0;
  CHECK(check_m_stationary_mpcc(a.mp, a.pt, lim).status == Verdict::Unknown);
  CHECK(check_m_stationary_anf(a.pf.program, a.e, lim).status == Verdict::Unknown);
}

TEST_CASE("B-stationarity evidence") {
  auto a = at("E2", vec({3, 0}));
  auto vb = check_b_stationary_anf(a.pf.program, a.e);
  REQUIRE(vb.status == Verdict::Fails);
  auto branches = enumerate_anf_branches(a.pf.program, a.e);
  REQUIRE(branches.size() == vb.branches.size());
  bool some_descent = false;
  for (std::size_t k = 0; k < branches.size(); ++k) {
    const auto& bs = vb.branches[k];
    CHECK(valid_branch_stationarity(branches[k], bs));
    if (!bs.stationary) {
      some_descent = true;
      CHECK(lin_cone_branch(branches[k]).contains(bs.descent));
      CHECK(dot(bs.gradient, bs.descent) < Rational(0));
    }
  }
  CHECK(some_descent);

  auto o = at("E4", vec({0, 0}));
  auto vo = check_b_stationary_mpcc(o.mp, o.pt);
  REQUIRE(vo.status == Verdict::Holds);
  auto mb = enumerate_mpcc_branches(o.mp, o.pt);
  for (std::size_t k = 0; k < mb.size(); ++k) {
    // gradient = eq^T y + ge^T l with l >= 0 over the branch's active rows.
    const auto& bs = vo.branches[k];
    CHECK(bs.stationary);
    CHECK(valid_branch_stationarity(mb[k], bs));
    for (const auto& l : bs.ge_mult) CHECK(l >= Rational(0));
  }
}

TEST_CASE("stationarity agrees across forms at every corpus point") {
  for (const auto& name : testsupport::corpus_names()) {
    auto pf = testsupport::load_corpus(name);
    for (const auto& p : pf.points) {
      CAPTURE(name);
      CAPTURE(p.label);
      auto a = at(name, p.t);
      auto ma = check_m_stationary_anf(a.pf.program, a.e);
      auto mm = check_m_stationary_mpcc(a.mp, a.pt);
      CHECK(ma.status == mm.status);
      CHECK(check_b_stationary_anf(a.pf.program, a.e).status == check_b_stationary_mpcc(a.mp, a.pt).status);
      if (mm.status == Verdict::Holds) {
        auto t = translate_multipliers(a.pf.program, a.e, a.mp, a.pt, mm.multipliers, TranslateDirection::MpccToAnf);
        CHECK(valid_m_multipliers_anf(a.pf.program, a.e, t));
      }
    }
  }
}

TEST_CASE("maximizing t2 on t2 = |t1| is not M-stationary at the kink") {
  // With f = -t2 the rows force lam_e = 1 and mu_u = mu_v = -1.
  auto a = at("E1", vec({0, 0}));
  a.pf.program.objective = QuadraticFunc::coordinate(2, 1, Rational(-1));
  a.mp = to_mpcc(a.pf.program);
  auto vm = check_m_stationary_mpcc(a.mp, a.pt);
  check_refutations(vm, [&](const CaseCode& c) { return m_stationarity_lp_mpcc(a.mp, a.pt, c); }, 3);
  CHECK(check_m_stationary_anf(a.pf.program, a.e).status == Verdict::Fails);
}

TEST_CASE("a zero gradient is stationary with zero multipliers") {
  auto a = at("E4", vec({0, 0}));
  auto vm = check_m_stationary_mpcc(a.mp, a.pt);
  REQUIRE(vm.status == Verdict::Holds);
  for (const auto* v : {&vm.multipliers.lam_e, &vm.multipliers.lam_z, &vm.multipliers.mu_u, &vm.multipliers.mu_v})
    CHECK(is_zero(*v));
}
