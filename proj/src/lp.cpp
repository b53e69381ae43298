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

#include "anfcq/lp.hpp"

#include <algorithm>
#include <stdexcept>

namespace anfcq {

void LpProblem::add_eq(const RatVector& row, const Rational& rhs) {
  eq.append_row(row);
  eq_rhs.push_back(rhs);
}

void LpProblem::add_ge(const RatVector& row, const Rational& rhs) {
  ge.append_row(row);
  ge_rhs.push_back(rhs);
}

void LpProblem::add_strict(const RatVector& row, const Rational& rhs) {
  strict.push_back(ge.rows());
  add_ge(row, rhs);
}

bool LpProblem::feasibility_only() const { return !objective || is_zero(*objective); }

std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Feasible: return "feasible";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

namespace {

void check_dimensions(const LpProblem& lp) {
  const std::size_t n = lp.num_vars;
  if (lp.eq.cols() != n || lp.ge.cols() != n)
    throw LpDimensionError("LP constraint matrix has the wrong number of columns");
  if (lp.eq.rows() != lp.eq_rhs.size() || lp.ge.rows() != lp.ge_rhs.size())
    throw LpDimensionError("LP right-hand side length does not match the row count");
  if (lp.objective && lp.objective->size() != n)
    throw LpDimensionError("LP objective length does not match the variable count");
  for (auto s : lp.strict)
    if (s >= lp.ge.rows()) throw LpDimensionError("strict row index out of range");
}

// Standard-form tableau: min c^T x, A x = b, x >= 0, with an artificial column per row.
class Tableau {
 public:
  Tableau(const LpProblem& lp) : n_(lp.num_vars), me_(lp.eq.rows()), mg_(lp.ge.rows()) {
    m_ = me_ + mg_;
    real_ = 2 * n_ + mg_;
    cols_ = real_ + m_;
    t_.assign(m_, RatVector(cols_));
    b_.assign(m_, Rational(0));
    sign_.assign(m_, 1);
    basis_.resize(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      const bool is_eq = r < me_;
      const std::size_t k = is_eq ? r : r - me_;
      const RatMatrix& a = is_eq ? lp.eq : lp.ge;
      Rational rhs = is_eq ? lp.eq_rhs[k] : lp.ge_rhs[k];
      int s = rhs.sign() < 0 ? -1 : 1;
      sign_[r] = s;
      for (std::size_t j = 0; j < n_; ++j) {
        Rational v = s > 0 ? a(k, j) : -a(k, j);
        t_[r][j] = v;
        t_[r][n_ + j] = -v;
      }
      if (!is_eq) t_[r][2 * n_ + k] = s > 0 ? Rational(-1) : Rational(1);
      t_[r][real_ + r] = 1;
      b_[r] = s > 0 ? rhs : -rhs;
      basis_[r] = real_ + r;
    }
  }

  // Runs Bland's rule on cost vector c over columns [0, limit). Returns the
  // entering column of an unbounded direction, or npos when optimal.
  std::size_t optimize(const RatVector& c, std::size_t limit) {
    for (;;) {
      reduced_costs(c);
      std::size_t enter = npos;
      for (std::size_t j = 0; j < limit; ++j)
        if (d_[j].sign() < 0) { enter = j; break; }
      if (enter == npos) return npos;
      std::size_t leave = npos;
      Rational best;
      for (std::size_t r = 0; r < m_; ++r) {
        if (t_[r][enter].sign() <= 0) continue;
        Rational ratio = b_[r] / t_[r][enter];
        if (leave == npos || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == npos) return enter;
      pivot(leave, enter);
    }
  }

  void reduced_costs(const RatVector& c) {
    d_ = c;
    for (std::size_t r = 0; r < m_; ++r) {
      const Rational& cb = c[basis_[r]];
      if (cb.is_zero()) continue;
      for (std::size_t j = 0; j < cols_; ++j)
        if (!t_[r][j].is_zero()) d_[j] -= cb * t_[r][j];
    }
  }

  void pivot(std::size_t r, std::size_t j) {
    Rational inv = Rational(1) / t_[r][j];
    for (auto& v : t_[r]) v *= inv;
    b_[r] *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || t_[i][j].is_zero()) continue;
      Rational f = t_[i][j];
      for (std::size_t k = 0; k < cols_; ++k)
        if (!t_[r][k].is_zero()) t_[i][k] -= f * t_[r][k];
      b_[i] -= f * b_[r];
    }
    basis_[r] = j;
  }

  // Pivots artificial columns out of the basis where a real column allows it.
  void drive_out_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < real_) continue;
      for (std::size_t j = 0; j < real_; ++j)
        if (!t_[r][j].is_zero()) { pivot(r, j); break; }
    }
  }

  Rational objective_value(const RatVector& c) const {
    Rational v;
    for (std::size_t r = 0; r < m_; ++r) v += c[basis_[r]] * b_[r];
    return v;
  }

  RatVector primal() const {
    RatVector std_x(cols_);
    for (std::size_t r = 0; r < m_; ++r) std_x[basis_[r]] = b_[r];
    RatVector x(n_);
    for (std::size_t j = 0; j < n_; ++j) x[j] = std_x[j] - std_x[n_ + j];
    return x;
  }

  RatVector ray(std::size_t enter) const {
    RatVector dir(cols_);
    dir[enter] = 1;
    for (std::size_t r = 0; r < m_; ++r) dir[basis_[r]] = -t_[r][enter];
    RatVector x(n_);
    for (std::size_t j = 0; j < n_; ++j) x[j] = dir[j] - dir[n_ + j];
    return x;
  }

  // Row multipliers y = c_B^T B^{-1}, read off the artificial columns and
  // mapped back to the original row orientation. `art_cost` is the cost the
  // artificial columns carried in the current objective.
  void duals(const Rational& art_cost, RatVector& y_eq, RatVector& y_ge) const {
    y_eq.assign(me_, Rational(0));
    y_ge.assign(mg_, Rational(0));
    for (std::size_t r = 0; r < m_; ++r) {
      Rational y = art_cost - d_[real_ + r];
      if (sign_[r] < 0) y = -y;
      if (r < me_) y_eq[r] = y; else y_ge[r - me_] = y;
    }
  }

  std::size_t real_cols() const { return real_; }
  std::size_t total_cols() const { return cols_; }
  std::size_t n() const { return n_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::size_t n_, me_, mg_, m_ = 0, real_ = 0, cols_ = 0;
  std::vector<RatVector> t_;
  RatVector b_, d_;
  std::vector<int> sign_;
  std::vector<std::size_t> basis_;
};

LpResult solve_plain(const LpProblem& lp) {
  Tableau tab(lp);
  RatVector c1(tab.total_cols());
  for (std::size_t j = tab.real_cols(); j < tab.total_cols(); ++j) c1[j] = 1;
  tab.optimize(c1, tab.total_cols());
  tab.reduced_costs(c1);
  LpResult res;
  if (tab.objective_value(c1).sign() > 0) {
    res.status = LpStatus::Infeasible;
    tab.duals(Rational(1), res.dual_eq, res.dual_ge);
    return res;
  }
  tab.drive_out_artificials();
  if (lp.feasibility_only()) {
    res.status = LpStatus::Feasible;
    res.primal = tab.primal();
    return res;
  }
  RatVector c2(tab.total_cols());
  for (std::size_t j = 0; j < tab.n(); ++j) {
    c2[j] = (*lp.objective)[j];
    c2[tab.n() + j] = -(*lp.objective)[j];
  }
  std::size_t enter = tab.optimize(c2, tab.real_cols());
  res.primal = tab.primal();
  if (enter != Tableau::npos) {
    res.status = LpStatus::Unbounded;
    res.ray = tab.ray(enter);
    return res;
  }
  tab.reduced_costs(c2);
  res.status = LpStatus::Optimal;
  res.value = dot(*lp.objective, res.primal);
  tab.duals(Rational(0), res.dual_eq, res.dual_ge);
  return res;
}

LpResult solve_with_strict_rows(const LpProblem& lp) {
  // Maximize a common margin m on the strict rows, capped at 1.
  const std::size_t n = lp.num_vars;
  LpProblem margin(n + 1);
  for (std::size_t i = 0; i < lp.eq.rows(); ++i) {
    RatVector row = lp.eq.row(i);
    row.push_back(0);
    margin.add_eq(row, lp.eq_rhs[i]);
  }
  std::vector<bool> is_strict(lp.ge.rows(), false);
  for (auto s : lp.strict) is_strict[s] = true;
  for (std::size_t i = 0; i < lp.ge.rows(); ++i) {
    RatVector row = lp.ge.row(i);
    row.push_back(is_strict[i] ? Rational(-1) : Rational(0));
    margin.add_ge(row, lp.ge_rhs[i]);
  }
  RatVector cap(n + 1);
  cap[n] = -1;
  margin.add_ge(cap, Rational(-1));
  RatVector obj(n + 1);
  obj[n] = -1;
  margin.objective = obj;

  LpResult inner = solve_plain(margin);
  LpResult res;
  if (inner.status == LpStatus::Optimal && inner.primal[n].sign() > 0) {
    res.status = LpStatus::Feasible;
    res.primal.assign(inner.primal.begin(), inner.primal.begin() + static_cast<std::ptrdiff_t>(n));
    return res;
  }
  if (inner.status == LpStatus::Unbounded)
    throw std::logic_error("margin LP reported unbounded despite the margin cap");
  res.status = LpStatus::Infeasible;
  res.dual_eq = inner.dual_eq;
  res.dual_ge.assign(inner.dual_ge.begin(), inner.dual_ge.end() - 1);
  return res;
}

}  // namespace

LpResult lp_solve(const LpProblem& lp) {
  check_dimensions(lp);
  if (!lp.strict.empty() && !lp.feasibility_only())
    throw std::invalid_argument("strict rows are only supported for feasibility problems");
  LpResult r = lp.strict.empty() ? solve_plain(lp) : solve_with_strict_rows(lp);
  std::string why;
  if (!certificate_valid(lp, r, &why))
    throw std::logic_error("internal error: LP certificate failed re-validation: " + why);
  return r;
}

bool certificate_valid(const LpProblem& lp, const LpResult& r, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  check_dimensions(lp);
  const std::size_t n = lp.num_vars;
  std::vector<bool> is_strict(lp.ge.rows(), false);
  for (auto s : lp.strict) is_strict[s] = true;

  auto primal_ok = [&](const RatVector& x, bool enforce_strict) {
    if (x.size() != n) return fail("primal has wrong length");
    RatVector ex = lp.eq * x, gx = lp.ge * x;
    for (std::size_t i = 0; i < ex.size(); ++i)
      if (ex[i] != lp.eq_rhs[i]) return fail("equality row " + std::to_string(i) + " violated");
    for (std::size_t i = 0; i < gx.size(); ++i) {
      if (gx[i] < lp.ge_rhs[i]) return fail("inequality row " + std::to_string(i) + " violated");
      if (enforce_strict && is_strict[i] && gx[i] == lp.ge_rhs[i])
        return fail("strict row " + std::to_string(i) + " holds with equality");
    }
    return true;
  };
  auto combo = [&](const RatVector& ye, const RatVector& yg) {
    RatVector s = lp.eq.transpose() * ye;
    RatVector t = lp.ge.transpose() * yg;
    return s + t;
  };
  auto duals_sized = [&]() {
    return r.dual_eq.size() == lp.eq.rows() && r.dual_ge.size() == lp.ge.rows();
  };

  switch (r.status) {
    case LpStatus::Feasible:
      return primal_ok(r.primal, true);
    case LpStatus::Infeasible: {
      if (!duals_sized()) return fail("dual vectors have wrong length");
      for (const auto& y : r.dual_ge)
        if (y.sign() < 0) return fail("negative multiplier on an inequality row");
      if (!is_zero(combo(r.dual_eq, r.dual_ge))) return fail("multipliers do not cancel the rows");
      Rational s = dot(lp.eq_rhs, r.dual_eq) + dot(lp.ge_rhs, r.dual_ge);
      if (s.sign() > 0) return true;
      if (s.sign() == 0)
        for (auto k : lp.strict)
          if (r.dual_ge[k].sign() > 0) return true;
      return fail("multipliers do not certify infeasibility");
    }
    case LpStatus::Optimal: {
      if (!lp.objective) return fail("optimal status without objective");
      if (!primal_ok(r.primal, false)) return false;
      if (!duals_sized()) return fail("dual vectors have wrong length");
      for (const auto& y : r.dual_ge)
        if (y.sign() < 0) return fail("negative dual on an inequality row");
      if (combo(r.dual_eq, r.dual_ge) != *lp.objective) return fail("dual is not feasible");
      Rational pv = dot(*lp.objective, r.primal);
      Rational dv = dot(lp.eq_rhs, r.dual_eq) + dot(lp.ge_rhs, r.dual_ge);
      if (pv != dv || pv != r.value) return fail("primal and dual values differ");
      return true;
    }
    case LpStatus::Unbounded: {
      if (!lp.objective) return fail("unbounded status without objective");
      if (!primal_ok(r.primal, false)) return false;
      if (r.ray.size() != n) return fail("ray has wrong length");
      if (!is_zero(lp.eq * r.ray)) return fail("ray leaves the equality rows");
      for (const auto& v : lp.ge * r.ray)
        if (v.sign() < 0) return fail("ray leaves an inequality row");
      if (dot(*lp.objective, r.ray).sign() >= 0) return fail("ray does not decrease the objective");
      return true;
    }
  }
  return fail("unknown status");
}

}  // namespace anfcq
