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


#include "anfcq/stationarity.hpp"

#include <algorithm>

#include "anfcq/cones.hpp"

namespace anfcq {

std::string to_string(StationarityKind k) {
  switch (k) {
    case StationarityKind::MAnf: return "M-stationarity (abs-normal)";
    case StationarityKind::MMpcc: return "M-stationarity (counterpart)";
    case StationarityKind::BAnf: return "abs-normal-linearized B-stationarity";
    case StationarityKind::BMpcc: return "MPCC-linearized B-stationarity";
  }
  return "?";
}

namespace {

RatVector unit(std::size_t n, std::size_t i, Rational v = Rational(1)) {
  RatVector r(n);
  r[i] = v;
  return r;
}

bool contains(const std::vector<std::size_t>& v, std::size_t i) {
  return std::find(v.begin(), v.end(), i) != v.end();
}

RatVector slice(const RatVector& v, std::size_t from, std::size_t len) {
  return RatVector(v.begin() + static_cast<std::ptrdiff_t>(from),
                   v.begin() + static_cast<std::ptrdiff_t>(from + len));
}

// Walks every string over `alphabet` of length k in lexicographic order until f returns true.
template <class F>
bool for_each_case(const std::string& alphabet, std::size_t k, F&& f) {
  std::vector<std::size_t> idx(k, 0);
  for (;;) {
    CaseCode c(k, ' ');
    for (std::size_t i = 0; i < k; ++i) c[i] = alphabet[idx[i]];
    if (f(c)) return true;
    std::size_t j = k;
    while (j > 0 && idx[j - 1] + 1 == alphabet.size()) idx[--j] = 0;
    if (j == 0) return false;
    ++idx[j - 1];
  }
}

// Inner product term g_i = [lamE^T d2cE - lamI^T d2cI + lamZ^T d2cZ]_i as a row over (lamE, lamI, lamZ).
RatVector g_row(const ConstraintJacobians& J, std::size_t m1, std::size_t m2, std::size_t s, std::size_t i) {
  RatVector r(m1 + m2 + s);
  for (std::size_t j = 0; j < m1; ++j) r[j] = J.e_z(j, i);
  for (std::size_t j = 0; j < m2; ++j) r[m1 + j] = -J.i_z(j, i);
  for (std::size_t l = 0; l < s; ++l) r[m1 + m2 + l] = J.z_z(l, i);
  return r;
}

Rational g_value(const ConstraintJacobians& J, const MultiplierSet& ms, std::size_t i) {
  Rational g;
  for (std::size_t j = 0; j < ms.lam_e.size(); ++j) g += ms.lam_e[j] * J.e_z(j, i);
  for (std::size_t j = 0; j < ms.lam_i.size(); ++j) g -= ms.lam_i[j] * J.i_z(j, i);
  for (std::size_t l = 0; l < ms.lam_z.size(); ++l) g += ms.lam_z[l] * J.z_z(l, i);
  return g;
}

bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

}  // namespace

LpProblem m_stationarity_lp_mpcc(const MpccProgram& mp, const MpccPoint& pt, const CaseCode& cases) {
  const std::size_t me = mp.m_e, s = mp.s, mi = mp.inequalities.size(), ny = mp.num_vars();
  const std::size_t nv = me + mi + 3 * s;
  const std::size_t o_i = me, o_z = me + mi, o_u = o_z + s, o_v = o_u + s;
  LpProblem lp(nv);
  const RatVector gf = mp.objective.gradient(pt.y);
  std::vector<RatVector> ge(mp.equalities.size()), gi(mi);
  for (std::size_t j = 0; j < mp.equalities.size(); ++j) ge[j] = mp.equalities[j].gradient(pt.y);
  for (std::size_t j = 0; j < mi; ++j) gi[j] = mp.inequalities[j].gradient(pt.y);
  for (std::size_t k = 0; k < ny; ++k) {
    RatVector row(nv);
    for (std::size_t j = 0; j < me; ++j) row[j] = ge[j][k];
    for (std::size_t i = 0; i < s; ++i) row[o_z + i] = ge[me + i][k];
    for (std::size_t j = 0; j < mi; ++j) row[o_i + j] = -gi[j][k];
    for (std::size_t i = 0; i < s; ++i) {
      if (k == mp.u_index(i)) row[o_u + i] = -1;
      if (k == mp.v_index(i)) row[o_v + i] = -1;
    }
    lp.add_eq(row, -gf[k]);
  }
  for (std::size_t j = 0; j < mi; ++j) {
    if (mp.inequalities[j].value(pt.y).is_zero()) lp.add_ge(unit(nv, o_i + j), Rational(0));
    else lp.add_eq(unit(nv, o_i + j), Rational(0));
  }
  for (auto i : pt.u_plus) lp.add_eq(unit(nv, o_u + i), Rational(0));
  for (auto i : pt.v_plus) lp.add_eq(unit(nv, o_v + i), Rational(0));
  if (cases.size() != pt.degenerate.size()) throw std::invalid_argument("case code length mismatch");
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const std::size_t i = pt.degenerate[k];
    switch (cases[k]) {
      case 'u': lp.add_eq(unit(nv, o_u + i), Rational(0)); break;
      case 'v': lp.add_eq(unit(nv, o_v + i), Rational(0)); break;
      case 'b':
        lp.add_strict(unit(nv, o_u + i), Rational(0));
        lp.add_strict(unit(nv, o_v + i), Rational(0));
        break;
      default: throw std::invalid_argument(std::string("unknown case code '") + cases[k] + "'");
    }
  }
  return lp;
}

LpProblem m_stationarity_lp_anf(const AbsNormalProgram& p, const EvalResult& e, const CaseCode& cases) {
  const std::size_t n = p.n_t, s = p.s, m1 = p.m1(), m2 = p.m2();
  const std::size_t nv = m1 + m2 + s, o_z = m1 + m2;
  const ConstraintJacobians J = constraint_jacobians(p, e);
  LpProblem lp(nv);
  for (std::size_t k = 0; k < n; ++k) {
    RatVector row(nv);
    for (std::size_t j = 0; j < m1; ++j) row[j] = J.e_t(j, k);
    for (std::size_t j = 0; j < m2; ++j) row[m1 + j] = -J.i_t(j, k);
    for (std::size_t i = 0; i < s; ++i) row[o_z + i] = J.z_t(i, k);
    lp.add_eq(row, -J.f_t[k]);
  }
  for (std::size_t j = 0; j < m2; ++j) {
    if (contains(e.active_ineq, j)) lp.add_ge(unit(nv, m1 + j), Rational(0));
    else lp.add_eq(unit(nv, m1 + j), Rational(0));
  }
  for (std::size_t i = 0; i < s; ++i) {
    if (contains(e.alpha, i)) continue;
    RatVector row = g_row(J, m1, m2, s, i);
    row[o_z + i] -= Rational(e.sigma[i]);
    lp.add_eq(row, Rational(0));
  }
  if (cases.size() != e.alpha.size()) throw std::invalid_argument("case code length mismatch");
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const std::size_t i = e.alpha[k];
    RatVector mu_plus = g_row(J, m1, m2, s, i), mu_minus = mu_plus;
    mu_plus[o_z + i] -= 1;
    mu_minus[o_z + i] += 1;
    switch (cases[k]) {
      case '+': lp.add_eq(mu_plus, Rational(0)); break;
      case '-': lp.add_eq(mu_minus, Rational(0)); break;
      case 'p':
        lp.add_ge(unit(nv, o_z + i), Rational(0));
        lp.add_strict(mu_plus, Rational(0));
        break;
      case 'n':
        lp.add_ge(unit(nv, o_z + i, Rational(-1)), Rational(0));
        lp.add_strict(mu_minus, Rational(0));
        break;
      default: throw std::invalid_argument(std::string("unknown case code '") + cases[k] + "'");
    }
  }
  return lp;
}

namespace {

template <class Build, class Unpack>
StationarityVerdict enumerate_m(StationarityKind kind, const std::string& alphabet,
                                const std::vector<std::size_t>& degenerate, const StationarityLimits& limits,
                                Build&& build, Unpack&& unpack) {
  StationarityVerdict v;
  v.kind = kind;
  v.degenerate = degenerate;
  if (degenerate.size() > limits.max_degenerate) {
    v.status = Verdict::Unknown;
    v.reason = std::to_string(degenerate.size()) + " degenerate indices exceed the case limit of " +
               std::to_string(limits.max_degenerate);
    return v;
  }
  const bool found = for_each_case(alphabet, degenerate.size(), [&](const CaseCode& c) {
    ++v.cases_tried;
    LpProblem lp = build(c);
    LpResult r = lp_solve(lp);
    if (r.status == LpStatus::Feasible) {
      v.cases = c;
      v.multipliers = unpack(r.primal);
      return true;
    }
    v.refutations.push_back({c, r.dual_eq, r.dual_ge});
    return false;
  });
  if (found) {
    v.status = Verdict::Holds;
    v.refutations.clear();
    v.reason = "multipliers found";
  } else {
    v.status = Verdict::Fails;
    v.reason = "no case combination admits multipliers";
  }
  return v;
}

}  // namespace

StationarityVerdict check_m_stationary_mpcc(const MpccProgram& mp, const MpccPoint& pt,
                                            const StationarityLimits& limits) {
  const std::size_t me = mp.m_e, s = mp.s, mi = mp.inequalities.size();
  StationarityVerdict v = enumerate_m(
      StationarityKind::MMpcc, "uvb", pt.degenerate, limits,
      [&](const CaseCode& c) { return m_stationarity_lp_mpcc(mp, pt, c); },
      [&](const RatVector& x) {
        MultiplierSet ms;
        ms.lam_e = slice(x, 0, me);
        ms.lam_i = slice(x, me, mi);
        ms.lam_z = slice(x, me + mi, s);
        ms.mu_u = slice(x, me + mi + s, s);
        ms.mu_v = slice(x, me + mi + 2 * s, s);
        return ms;
      });
  std::string why;
  if (v.status == Verdict::Holds && !valid_m_multipliers_mpcc(mp, pt, v.multipliers, &why))
    throw std::logic_error("multipliers from the case LP fail substitution: " + why);
  return v;
}

StationarityVerdict check_m_stationary_anf(const AbsNormalProgram& p, const EvalResult& e,
                                           const StationarityLimits& limits) {
  const std::size_t m1 = p.m1(), m2 = p.m2(), s = p.s;
  StationarityVerdict v = enumerate_m(
      StationarityKind::MAnf, "+-pn", e.alpha, limits,
      [&](const CaseCode& c) { return m_stationarity_lp_anf(p, e, c); },
      [&](const RatVector& x) {
        MultiplierSet ms;
        ms.lam_e = slice(x, 0, m1);
        ms.lam_i = slice(x, m1, m2);
        ms.lam_z = slice(x, m1 + m2, s);
        return complete_anf_multipliers(p, e, ms);
      });
  std::string why;
  if (v.status == Verdict::Holds && !valid_m_multipliers_anf(p, e, v.multipliers, &why))
    throw std::logic_error("multipliers from the case LP fail substitution: " + why);
  return v;
}

MultiplierSet complete_anf_multipliers(const AbsNormalProgram& p, const EvalResult& e, MultiplierSet ms) {
  const ConstraintJacobians J = constraint_jacobians(p, e);
  ms.mu_plus.assign(p.s, Rational(0));
  ms.mu_minus.assign(p.s, Rational(0));
  for (std::size_t i = 0; i < p.s; ++i) {
    const Rational g = g_value(J, ms, i);
    ms.mu_plus[i] = g - ms.lam_z[i];
    ms.mu_minus[i] = g + ms.lam_z[i];
  }
  return ms;
}

bool valid_m_multipliers_mpcc(const MpccProgram& mp, const MpccPoint& pt, const MultiplierSet& ms,
                              std::string* why) {
  const std::size_t s = mp.s, mi = mp.inequalities.size();
  if (ms.lam_e.size() != mp.m_e || ms.lam_i.size() != mi || ms.lam_z.size() != s || ms.mu_u.size() != s ||
      ms.mu_v.size() != s)
    return fail(why, "multiplier dimensions do not match the program");
  RatVector grad = mp.objective.gradient(pt.y);
  for (std::size_t j = 0; j < mp.m_e; ++j) grad = grad + ms.lam_e[j] * mp.equalities[j].gradient(pt.y);
  for (std::size_t i = 0; i < s; ++i) grad = grad + ms.lam_z[i] * mp.equalities[mp.m_e + i].gradient(pt.y);
  for (std::size_t j = 0; j < mi; ++j) grad = grad - ms.lam_i[j] * mp.inequalities[j].gradient(pt.y);
  for (std::size_t i = 0; i < s; ++i) {
    grad[mp.u_index(i)] -= ms.mu_u[i];
    grad[mp.v_index(i)] -= ms.mu_v[i];
  }
  if (!is_zero(grad)) return fail(why, "Lagrangian gradient is " + to_string(grad));
  for (std::size_t j = 0; j < mi; ++j) {
    if (ms.lam_i[j].sign() < 0) return fail(why, "negative inequality multiplier " + std::to_string(j + 1));
    if (!(ms.lam_i[j] * mp.inequalities[j].value(pt.y)).is_zero())
      return fail(why, "complementary slackness fails for inequality " + std::to_string(j + 1));
  }
  for (auto i : pt.u_plus)
    if (!ms.mu_u[i].is_zero()) return fail(why, "mu_u nonzero where u > 0 at index " + std::to_string(i + 1));
  for (auto i : pt.v_plus)
    if (!ms.mu_v[i].is_zero()) return fail(why, "mu_v nonzero where v > 0 at index " + std::to_string(i + 1));
  for (auto i : pt.degenerate) {
    const bool both = ms.mu_u[i].sign() > 0 && ms.mu_v[i].sign() > 0;
    if (!both && !(ms.mu_u[i] * ms.mu_v[i]).is_zero())
      return fail(why, "sign condition fails at degenerate index " + std::to_string(i + 1));
  }
  return true;
}

bool valid_m_multipliers_anf(const AbsNormalProgram& p, const EvalResult& e, const MultiplierSet& ms,
                             std::string* why) {
  const std::size_t n = p.n_t, s = p.s, m1 = p.m1(), m2 = p.m2();
  if (ms.lam_e.size() != m1 || ms.lam_i.size() != m2 || ms.lam_z.size() != s)
    return fail(why, "multiplier dimensions do not match the program");
  const ConstraintJacobians J = constraint_jacobians(p, e);
  RatVector a = J.f_t;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < m1; ++j) a[k] += ms.lam_e[j] * J.e_t(j, k);
    for (std::size_t j = 0; j < m2; ++j) a[k] -= ms.lam_i[j] * J.i_t(j, k);
    for (std::size_t i = 0; i < s; ++i) a[k] += ms.lam_z[i] * J.z_t(i, k);
  }
  if (!is_zero(a)) return fail(why, "t-gradient of the Lagrangian is " + to_string(a));
  for (std::size_t i = 0; i < s; ++i) {
    const Rational g = g_value(J, ms, i);
    const Rational mp_ = g - ms.lam_z[i], mm = g + ms.lam_z[i];
    if (!ms.mu_plus.empty() && (ms.mu_plus.size() != s || ms.mu_plus[i] != mp_))
      return fail(why, "mu_plus does not match its definition at index " + std::to_string(i + 1));
    if (!ms.mu_minus.empty() && (ms.mu_minus.size() != s || ms.mu_minus[i] != mm))
      return fail(why, "mu_minus does not match its definition at index " + std::to_string(i + 1));
    if (contains(e.alpha, i)) {
      if (!(mp_ * mm).is_zero() && !(g > ms.lam_z[i].abs()))
        return fail(why, "sign condition fails at active index " + std::to_string(i + 1));
    } else if (g != ms.lam_z[i] * Rational(e.sigma[i])) {
      return fail(why, "switching row condition fails at inactive index " + std::to_string(i + 1));
    }
  }
  for (std::size_t j = 0; j < m2; ++j) {
    if (ms.lam_i[j].sign() < 0) return fail(why, "negative inequality multiplier " + std::to_string(j + 1));
    if (!(ms.lam_i[j] * e.c_i_values[j]).is_zero())
      return fail(why, "complementary slackness fails for inequality " + std::to_string(j + 1));
  }
  return true;
}

MultiplierSet translate_multipliers(const AbsNormalProgram& p, const EvalResult& e, const MpccProgram& mp,
                                    const MpccPoint& pt, const MultiplierSet& ms, TranslateDirection dir) {
  std::string why;
  MultiplierSet out;
  out.lam_e = ms.lam_e;
  out.lam_i = ms.lam_i;
  out.lam_z = ms.lam_z;
  if (dir == TranslateDirection::AnfToMpcc) {
    const MultiplierSet src = ms.mu_plus.empty() ? complete_anf_multipliers(p, e, ms) : ms;
    if (!valid_m_multipliers_anf(p, e, src, &why)) throw InvalidMultipliersError(why);
    out.mu_u = src.mu_plus;
    out.mu_v = src.mu_minus;
    if (!valid_m_multipliers_mpcc(mp, pt, out, &why))
      throw std::logic_error("translated multipliers fail the counterpart system: " + why);
  } else {
    if (!valid_m_multipliers_mpcc(mp, pt, ms, &why)) throw InvalidMultipliersError(why);
    out.mu_plus = ms.mu_u;
    out.mu_minus = ms.mu_v;
    if (!valid_m_multipliers_anf(p, e, out, &why))
      throw std::logic_error("translated multipliers fail the abs-normal system: " + why);
  }
  return out;
}

namespace {

LpProblem descent_lp(const PolyCone& lin, const RatVector& grad) {
  LpProblem lp(lin.dim);
  for (std::size_t r = 0; r < lin.eq.rows(); ++r) lp.add_eq(lin.eq.row(r), Rational(0));
  for (std::size_t r = 0; r < lin.ge.rows(); ++r) lp.add_ge(lin.ge.row(r), Rational(0));
  lp.add_ge(Rational(-1) * grad, Rational(1));
  return lp;
}

}  // namespace

StationarityVerdict check_b_stationary(const std::vector<SmoothBranchProblem>& branches, StationarityKind kind) {
  StationarityVerdict v;
  v.kind = kind;
  v.status = Verdict::Holds;
  std::vector<std::string> bad;
  for (const auto& b : branches) {
    BranchStationarity bs;
    bs.label = b.label;
    bs.gradient = b.objective.gradient(b.anchor);
    const PolyCone lin = lin_cone_branch(b);
    const LpResult r = lp_solve(descent_lp(lin, bs.gradient));
    if (r.status == LpStatus::Feasible) {
      bs.descent = r.primal;
      v.status = Verdict::Fails;
      bad.push_back(b.label);
    } else {
      const Rational scale = r.dual_ge.back();
      bs.stationary = true;
      for (const auto& y : r.dual_eq) bs.eq_mult.push_back(y / scale);
      for (std::size_t k = 0; k + 1 < r.dual_ge.size(); ++k) bs.ge_mult.push_back(r.dual_ge[k] / scale);
    }
    std::string why;
    if (!valid_branch_stationarity(b, bs, &why)) throw std::logic_error("branch evidence fails: " + why);
    v.branches.push_back(std::move(bs));
  }
  if (bad.empty()) {
    v.reason = "no first-order descent direction on any branch";
  } else {
    v.reason = "descent direction on";
    for (const auto& l : bad) v.reason += " " + l;
  }
  return v;
}

StationarityVerdict check_b_stationary_anf(const AbsNormalProgram& p, const EvalResult& e,
                                           const StationarityLimits& limits) {
  return check_b_stationary(enumerate_anf_branches(p, e, limits.branches), StationarityKind::BAnf);
}

StationarityVerdict check_b_stationary_mpcc(const MpccProgram& mp, const MpccPoint& pt,
                                            const StationarityLimits& limits) {
  return check_b_stationary(enumerate_mpcc_branches(mp, pt, limits.branches), StationarityKind::BMpcc);
}

bool valid_branch_stationarity(const SmoothBranchProblem& b, const BranchStationarity& s, std::string* why) {
  const PolyCone lin = lin_cone_branch(b);
  const RatVector grad = b.objective.gradient(b.anchor);
  if (s.gradient != grad) return fail(why, "recorded gradient differs from the objective gradient");
  if (!s.stationary) {
    if (s.descent.size() != lin.dim || !lin.contains(s.descent))
      return fail(why, "descent direction is not in the linearized cone");
    if (dot(grad, s.descent).sign() >= 0) return fail(why, "direction is not a descent direction");
    return true;
  }
  if (s.eq_mult.size() != lin.eq.rows() || s.ge_mult.size() != lin.ge.rows())
    return fail(why, "multiplier dimensions do not match the linearized cone");
  RatVector sum(lin.dim);
  for (std::size_t r = 0; r < lin.eq.rows(); ++r) sum = sum + s.eq_mult[r] * lin.eq.row(r);
  for (std::size_t r = 0; r < lin.ge.rows(); ++r) {
    if (s.ge_mult[r].sign() < 0) return fail(why, "negative multiplier on an inequality row");
    sum = sum + s.ge_mult[r] * lin.ge.row(r);
  }
  if (sum != grad) return fail(why, "gradient is not the stated combination of cone rows");
  return true;
}

}  // namespace anfcq
