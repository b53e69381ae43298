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

#include "anfcq/transforms.hpp"

#include <algorithm>

namespace anfcq {

namespace {

std::string idx(std::size_t i) { return std::to_string(i + 1); }

// Matrix selecting the first n of m coordinates.
RatMatrix leading_selector(std::size_t n, std::size_t m) {
  RatMatrix s(n, m);
  for (std::size_t j = 0; j < n; ++j) s(j, j) = 1;
  return s;
}

}  // namespace

SlackProgram to_slack(const AbsNormalProgram& p) {
  if (auto r = validate(p); !r.ok()) throw InvalidProgramError(r);
  const std::size_t n = p.n_t, s = p.s, m2 = p.m2();
  AbsNormalProgram q;
  q.name = p.name;
  q.n_t = n + m2;
  q.s = s + m2;
  q.smoothness_degree = p.smoothness_degree;
  const std::size_t joint = q.joint_dim();
  const std::size_t w0 = n, zt0 = n + m2, zw0 = n + m2 + s;

  RatMatrix sel(n + s, joint);
  for (std::size_t j = 0; j < n; ++j) sel(j, j) = 1;
  for (std::size_t i = 0; i < s; ++i) sel(n + i, zt0 + i) = 1;

  q.objective = p.objective.compose(leading_selector(n, q.n_t));
  for (const auto& f : p.c_e) q.c_e.push_back(f.compose(sel));
  for (std::size_t j = 0; j < m2; ++j) {
    QuadraticFunc f = p.c_i[j].compose(sel);
    f.linear[zw0 + j] -= 1;
    q.c_e.push_back(std::move(f));
  }
  for (const auto& f : p.c_z) q.c_z.push_back(f.compose(sel));
  for (std::size_t j = 0; j < m2; ++j) q.c_z.push_back(QuadraticFunc::coordinate(joint, w0 + j));
  return {p, std::move(q)};
}

RatVector lift_point(const AbsNormalProgram& p, const RatVector& t, const std::vector<int>& w_signs) {
  EvalResult e = eval(p, t);
  if (!w_signs.empty() && w_signs.size() != p.m2())
    throw std::invalid_argument("lift_point: expected one sign per inequality");
  RatVector x = t;
  for (std::size_t j = 0; j < p.m2(); ++j) {
    int sg = w_signs.empty() ? 1 : w_signs[j];
    if (sg != 1 && sg != -1) throw std::invalid_argument("lift_point: signs must be +1 or -1");
    x.push_back(sg > 0 ? e.c_i_values[j] : -e.c_i_values[j]);
  }
  return x;
}

MpccProgram to_mpcc(const AbsNormalProgram& p) {
  if (auto r = validate(p); !r.ok()) throw InvalidProgramError(r);
  MpccProgram mp;
  mp.name = p.name;
  mp.n_t = p.n_t;
  mp.s = p.s;
  mp.m_e = p.m1();
  const std::size_t N = mp.num_vars();
  RatMatrix m(p.joint_dim(), N);
  for (std::size_t j = 0; j < p.n_t; ++j) m(j, j) = 1;
  for (std::size_t i = 0; i < p.s; ++i) {
    m(p.n_t + i, mp.u_index(i)) = 1;
    m(p.n_t + i, mp.v_index(i)) = 1;
  }
  mp.objective = p.objective.compose(leading_selector(p.n_t, N));
  for (const auto& f : p.c_e) mp.equalities.push_back(f.compose(m));
  for (std::size_t i = 0; i < p.s; ++i) {
    QuadraticFunc f = p.c_z[i].compose(m);
    f.linear[mp.u_index(i)] -= 1;
    f.linear[mp.v_index(i)] += 1;
    mp.equalities.push_back(std::move(f));
  }
  for (const auto& f : p.c_i) mp.inequalities.push_back(f.compose(m));
  return mp;
}

Signature MpccPoint::anchor_sigma() const {
  Signature s(u_plus.size() + v_plus.size() + degenerate.size(), 0);
  for (auto i : u_plus) s[i] = 1;
  for (auto i : v_plus) s[i] = -1;
  return s;
}

MpccPoint make_mpcc_point(const MpccProgram& mp, const RatVector& y) {
  if (y.size() != mp.num_vars()) throw std::invalid_argument("MPCC point has the wrong length");
  MpccPoint pt;
  pt.y = y;
  for (std::size_t i = 0; i < mp.s; ++i) {
    const Rational& u = y[mp.u_index(i)];
    const Rational& v = y[mp.v_index(i)];
    if (u.sign() < 0 || v.sign() < 0 || (u.sign() > 0 && v.sign() > 0))
      throw InfeasiblePointError("complementarity pair " + idx(i) + " is violated");
    if (u.sign() > 0) pt.u_plus.push_back(i);
    else if (v.sign() > 0) pt.v_plus.push_back(i);
    else pt.degenerate.push_back(i);
  }
  return pt;
}

bool is_feasible_anf(const AbsNormalProgram& p, const RatVector& x, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (x.size() != p.joint_dim()) return fail("point has the wrong length");
  RatVector y = x;
  for (std::size_t i = 0; i < p.s; ++i) y[p.n_t + i] = x[p.n_t + i].abs();
  for (std::size_t i = 0; i < p.s; ++i)
    if (p.c_z[i].value(y) != x[p.n_t + i]) return fail("switching equation " + idx(i) + " is violated");
  for (std::size_t j = 0; j < p.m1(); ++j)
    if (!p.c_e[j].value(y).is_zero()) return fail("equality " + idx(j) + " is violated");
  for (std::size_t j = 0; j < p.m2(); ++j)
    if (p.c_i[j].value(y).sign() < 0) return fail("inequality " + idx(j) + " is violated");
  return true;
}

bool is_feasible_mpcc(const MpccProgram& mp, const RatVector& y, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (y.size() != mp.num_vars()) return fail("point has the wrong length");
  for (std::size_t j = 0; j < mp.equalities.size(); ++j)
    if (!mp.equalities[j].value(y).is_zero()) return fail("equality " + idx(j) + " is violated");
  for (std::size_t j = 0; j < mp.inequalities.size(); ++j)
    if (mp.inequalities[j].value(y).sign() < 0) return fail("inequality " + idx(j) + " is violated");
  for (std::size_t i = 0; i < mp.s; ++i) {
    const Rational& u = y[mp.u_index(i)];
    const Rational& v = y[mp.v_index(i)];
    if (u.sign() < 0 || v.sign() < 0 || !(u * v).is_zero())
      return fail("complementarity pair " + idx(i) + " is violated");
  }
  return true;
}

RatVector phi(const AbsNormalProgram& p, const MpccProgram& mp, const RatVector& y) {
  std::string why;
  if (!is_feasible_mpcc(mp, y, &why)) throw InfeasiblePointError("phi: " + why);
  RatVector x(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(mp.n_t));
  for (std::size_t i = 0; i < mp.s; ++i) x.push_back(y[mp.u_index(i)] - y[mp.v_index(i)]);
  (void)p;
  return x;
}

RatVector phi_inv(const AbsNormalProgram& p, const MpccProgram& mp, const RatVector& x) {
  std::string why;
  if (!is_feasible_anf(p, x, &why)) throw InfeasiblePointError("phi_inv: " + why);
  RatVector y(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(p.n_t));
  y.resize(mp.num_vars());
  for (std::size_t i = 0; i < p.s; ++i) {
    y[mp.u_index(i)] = positive_part(x[p.n_t + i]);
    y[mp.v_index(i)] = negative_part(x[p.n_t + i]);
  }
  return y;
}

RatMatrix psi_matrix(const MpccProgram& mp) {
  RatMatrix m(mp.n_t + mp.s, mp.num_vars());
  for (std::size_t j = 0; j < mp.n_t; ++j) m(j, j) = 1;
  for (std::size_t i = 0; i < mp.s; ++i) {
    m(mp.n_t + i, mp.u_index(i)) = 1;
    m(mp.n_t + i, mp.v_index(i)) = -1;
  }
  return m;
}

RatVector psi(const MpccProgram& mp, const RatVector& dy) {
  if (dy.size() != mp.num_vars()) throw std::invalid_argument("psi: dimension mismatch");
  return psi_matrix(mp) * dy;
}

RatVector psi_inv(const MpccProgram& mp, const MpccPoint& pt, const RatVector& dx) {
  if (dx.size() != mp.n_t + mp.s) throw std::invalid_argument("psi_inv: dimension mismatch");
  RatVector dy(dx.begin(), dx.begin() + static_cast<std::ptrdiff_t>(mp.n_t));
  dy.resize(mp.num_vars());
  for (auto i : pt.u_plus) dy[mp.u_index(i)] = dx[mp.n_t + i];
  for (auto i : pt.v_plus) dy[mp.v_index(i)] = -dx[mp.n_t + i];
  for (auto i : pt.degenerate) {
    dy[mp.u_index(i)] = positive_part(dx[mp.n_t + i]);
    dy[mp.v_index(i)] = negative_part(dx[mp.n_t + i]);
  }
  return dy;
}

std::vector<std::size_t> BranchSpec::degenerate() const {
  std::vector<std::size_t> d;
  for (std::size_t i = 0; i < anchor_sigma.size(); ++i)
    if (anchor_sigma[i] == 0) d.push_back(i);
  return d;
}

std::string BranchSpec::label() const {
  if (kind == Kind::Signature) return signature_label(sigma);
  std::string s = "P={";
  for (std::size_t k = 0; k < partition.size(); ++k) {
    if (k) s += ",";
    s += idx(partition[k]);
  }
  return s + "}";
}

BranchSpec branch_correspondence(const BranchSpec& b) {
  BranchSpec out;
  out.anchor_sigma = b.anchor_sigma;
  if (b.kind == BranchSpec::Kind::Signature) {
    out.kind = BranchSpec::Kind::Partition;
    for (auto i : b.degenerate())
      if (b.sigma.at(i) < 0) out.partition.push_back(i);
  } else {
    out.kind = BranchSpec::Kind::Signature;
    out.sigma = b.anchor_sigma;
    for (auto i : b.degenerate()) out.sigma[i] = 1;
    for (auto i : b.partition) out.sigma.at(i) = -1;
  }
  return out;
}

SmoothBranchProblem anf_branch(const AbsNormalProgram& p, const EvalResult& e, const Signature& sigma) {
  if (sigma.size() != p.s || !is_definite(sigma) || !succeq(sigma, e.sigma))
    throw std::invalid_argument("anf_branch: signature must be definite and refine sigma(t)");
  const std::size_t n = p.n_t, s = p.s, N = n + s;
  SmoothBranchProblem b;
  b.spec.kind = BranchSpec::Kind::Signature;
  b.spec.anchor_sigma = e.sigma;
  b.spec.sigma = sigma;
  b.label = b.spec.label();
  b.num_vars = N;
  RatMatrix scale = RatMatrix::identity(N);
  for (std::size_t i = 0; i < s; ++i) scale(n + i, n + i) = sigma[i];
  b.objective = p.objective.compose(leading_selector(n, N));
  for (std::size_t j = 0; j < p.m1(); ++j) {
    b.equalities.push_back(p.c_e[j].compose(scale));
    b.eq_names.push_back("cE" + idx(j));
  }
  for (std::size_t i = 0; i < s; ++i) {
    QuadraticFunc f = p.c_z[i].compose(scale);
    f.linear[n + i] -= 1;
    b.equalities.push_back(std::move(f));
    b.eq_names.push_back("cZ" + idx(i));
  }
  for (std::size_t j = 0; j < p.m2(); ++j) {
    b.inequalities.push_back(p.c_i[j].compose(scale));
    b.ineq_names.push_back("cI" + idx(j));
  }
  for (std::size_t i = 0; i < s; ++i) {
    b.inequalities.push_back(QuadraticFunc::coordinate(N, n + i, Rational(sigma[i])));
    b.ineq_names.push_back("sign" + idx(i));
  }
  b.anchor = e.t;
  b.anchor.insert(b.anchor.end(), e.z.begin(), e.z.end());
  return b;
}

SmoothBranchProblem mpcc_branch(const MpccProgram& mp, const MpccPoint& pt,
                                const std::vector<std::size_t>& partition) {
  std::vector<bool> in_p(mp.s, false), is_deg(mp.s, false);
  for (auto i : pt.degenerate) is_deg[i] = true;
  for (auto i : partition) {
    if (i >= mp.s || !is_deg[i]) throw std::invalid_argument("mpcc_branch: P must be a subset of the degenerate set");
    in_p[i] = true;
  }
  const std::size_t N = mp.num_vars();
  SmoothBranchProblem b;
  b.spec.kind = BranchSpec::Kind::Partition;
  b.spec.anchor_sigma = pt.anchor_sigma();
  b.spec.partition = partition;
  std::sort(b.spec.partition.begin(), b.spec.partition.end());
  b.label = b.spec.label();
  b.num_vars = N;
  b.objective = mp.objective;
  b.equalities = mp.equalities;
  for (std::size_t j = 0; j < mp.equalities.size(); ++j)
    b.eq_names.push_back(j < mp.m_e ? "cE" + idx(j) : "cZ" + idx(j - mp.m_e));
  b.inequalities = mp.inequalities;
  for (std::size_t j = 0; j < mp.inequalities.size(); ++j) b.ineq_names.push_back("cI" + idx(j));
  const Signature anchor = pt.anchor_sigma();
  for (std::size_t i = 0; i < mp.s; ++i) {
    const bool v_side = anchor[i] < 0 || in_p[i];  // V+ or P: u = 0, v >= 0
    if (v_side) {
      b.equalities.push_back(QuadraticFunc::coordinate(N, mp.u_index(i)));
      b.eq_names.push_back("u" + idx(i));
      b.inequalities.push_back(QuadraticFunc::coordinate(N, mp.v_index(i)));
      b.ineq_names.push_back("v" + idx(i));
    } else {
      b.equalities.push_back(QuadraticFunc::coordinate(N, mp.v_index(i)));
      b.eq_names.push_back("v" + idx(i));
      b.inequalities.push_back(QuadraticFunc::coordinate(N, mp.u_index(i)));
      b.ineq_names.push_back("u" + idx(i));
    }
  }
  b.anchor = pt.y;
  return b;
}

namespace {

void check_branch_count(std::size_t degenerate, const BranchLimits& limits) {
  if (degenerate >= 63 || (std::size_t{1} << degenerate) > limits.max_branches)
    throw BranchLimitError("2^" + std::to_string(degenerate) + " branches exceed the limit of " +
                           std::to_string(limits.max_branches));
}

}  // namespace

std::vector<SmoothBranchProblem> enumerate_anf_branches(const AbsNormalProgram& p, const EvalResult& e,
                                                        const BranchLimits& limits) {
  const auto& a = e.alpha;
  check_branch_count(a.size(), limits);
  std::vector<SmoothBranchProblem> out;
  const std::size_t count = std::size_t{1} << a.size();
  for (std::size_t mask = 0; mask < count; ++mask) {
    Signature sg = e.sigma;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const bool minus = (mask >> (a.size() - 1 - k)) & 1U;
      sg[a[k]] = minus ? -1 : 1;
    }
    out.push_back(anf_branch(p, e, sg));
  }
  return out;
}

std::vector<SmoothBranchProblem> enumerate_mpcc_branches(const MpccProgram& mp, const MpccPoint& pt,
                                                         const BranchLimits& limits) {
  const auto& d = pt.degenerate;
  check_branch_count(d.size(), limits);
  std::vector<SmoothBranchProblem> out;
  const std::size_t count = std::size_t{1} << d.size();
  for (std::size_t mask = 0; mask < count; ++mask) {
    std::vector<std::size_t> part;
    for (std::size_t k = 0; k < d.size(); ++k)
      if ((mask >> (d.size() - 1 - k)) & 1U) part.push_back(d[k]);
    out.push_back(mpcc_branch(mp, pt, part));
  }
  return out;
}

}  // namespace anfcq
