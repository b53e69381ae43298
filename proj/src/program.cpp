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

#include "anfcq/program.hpp"

namespace anfcq {

QuadraticFunc QuadraticFunc::affine(RatVector lin, Rational c) {
  QuadraticFunc q(lin.size());
  q.linear = std::move(lin);
  q.constant = std::move(c);
  return q;
}

QuadraticFunc QuadraticFunc::coordinate(std::size_t n, std::size_t i, Rational coef) {
  QuadraticFunc q(n);
  q.linear.at(i) = std::move(coef);
  return q;
}

Rational QuadraticFunc::value(const RatVector& y) const {
  if (y.size() != dim()) throw std::invalid_argument("QuadraticFunc::value: dimension mismatch");
  Rational v = constant + dot(linear, y);
  if (!hessian.is_zero()) v += Rational(1, 2) * dot(y, hessian * y);
  return v;
}

RatVector QuadraticFunc::gradient(const RatVector& y) const {
  if (y.size() != dim()) throw std::invalid_argument("QuadraticFunc::gradient: dimension mismatch");
  return linear + hessian * y;
}

QuadraticFunc QuadraticFunc::compose(const RatMatrix& m) const {
  if (m.rows() != dim()) throw std::invalid_argument("QuadraticFunc::compose: dimension mismatch");
  QuadraticFunc q(m.cols());
  q.constant = constant;
  RatMatrix mt = m.transpose();
  q.linear = mt * linear;
  if (!hessian.is_zero()) q.hessian = mt * hessian * m;
  return q;
}

QuadraticFunc& QuadraticFunc::operator+=(const QuadraticFunc& o) {
  constant += o.constant;
  linear = linear + o.linear;
  hessian = hessian + o.hessian;
  return *this;
}

QuadraticFunc& QuadraticFunc::operator-=(const QuadraticFunc& o) {
  constant -= o.constant;
  linear = linear - o.linear;
  hessian = hessian - o.hessian;
  return *this;
}

QuadraticFunc QuadraticFunc::operator-() const {
  QuadraticFunc q(dim());
  q -= *this;
  return q;
}

std::string ValidationReport::summary() const {
  std::string s;
  for (const auto& i : issues) {
    if (!s.empty()) s += "; ";
    s += i.message;
  }
  return s.empty() ? "ok" : s;
}

ValidationReport validate(const AbsNormalProgram& p) {
  ValidationReport r;
  auto add = [&](std::string code, std::string msg) { r.issues.push_back({std::move(code), std::move(msg)}); };
  auto check_func = [&](const QuadraticFunc& q, std::size_t n, const std::string& what) {
    if (q.linear.size() != n || q.hessian.rows() != n || q.hessian.cols() != n) {
      add("dimension", what + ": expected " + std::to_string(n) + " variables");
      return false;
    }
    if (!q.hessian.is_symmetric()) add("asymmetric", what + ": quadratic matrix is not symmetric");
    return true;
  };
  check_func(p.objective, p.n_t, "objective");
  const std::size_t n = p.joint_dim();
  for (std::size_t j = 0; j < p.c_e.size(); ++j) check_func(p.c_e[j], n, "equality " + std::to_string(j + 1));
  for (std::size_t j = 0; j < p.c_i.size(); ++j) check_func(p.c_i[j], n, "inequality " + std::to_string(j + 1));
  if (p.c_z.size() != p.s)
    add("dimension", "expected " + std::to_string(p.s) + " switching rows, found " + std::to_string(p.c_z.size()));
  for (std::size_t i = 0; i < p.c_z.size(); ++i) {
    if (!check_func(p.c_z[i], n, "switching " + std::to_string(i + 1))) continue;
    for (std::size_t j = i; j < p.s; ++j) {
      const std::size_t col = p.n_t + j;
      bool depends = !p.c_z[i].linear[col].is_zero();
      for (std::size_t k = 0; k < n && !depends; ++k)
        depends = !p.c_z[i].hessian(col, k).is_zero() || !p.c_z[i].hessian(k, col).is_zero();
      if (depends)
        add("triangularity", "switching row " + std::to_string(i + 1) + " depends on |z" +
                                 std::to_string(j + 1) + "| at (" + std::to_string(i + 1) + "," +
                                 std::to_string(j + 1) + ")");
    }
  }
  return r;
}

Signature signature_of(const RatVector& z) {
  Signature s(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) s[i] = z[i].sign();
  return s;
}

bool is_definite(const Signature& s) {
  for (int v : s)
    if (v == 0) return false;
  return true;
}

bool succeq(const Signature& a, const Signature& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] * b[i] < b[i] * b[i]) return false;
  return true;
}

std::string signature_label(const Signature& s) {
  std::string out = "σ=";
  for (int v : s) out += v > 0 ? '+' : (v < 0 ? '-' : '0');
  return out;
}

bool EvalResult::feasible() const {
  for (const auto& v : c_e_values)
    if (!v.is_zero()) return false;
  for (const auto& v : c_i_values)
    if (v.sign() < 0) return false;
  return true;
}

RatVector EvalResult::joint() const {
  RatVector y = t;
  y.insert(y.end(), abs_z.begin(), abs_z.end());
  return y;
}

EvalResult eval(const AbsNormalProgram& p, const RatVector& t) {
  if (auto r = validate(p); !r.ok()) throw InvalidProgramError(r);
  if (t.size() != p.n_t)
    throw std::invalid_argument("point has " + std::to_string(t.size()) + " entries, expected " +
                                std::to_string(p.n_t));
  EvalResult e;
  e.t = t;
  e.z.assign(p.s, Rational(0));
  e.abs_z.assign(p.s, Rational(0));
  RatVector y = t;
  y.resize(p.joint_dim());
  for (std::size_t i = 0; i < p.s; ++i) {
    // Entries of y at positions >= n_t + i are still zero and do not enter row i.
    e.z[i] = p.c_z[i].value(y);
    e.abs_z[i] = e.z[i].abs();
    y[p.n_t + i] = e.abs_z[i];
  }
  e.sigma = signature_of(e.z);
  for (std::size_t i = 0; i < p.s; ++i)
    if (e.sigma[i] == 0) e.alpha.push_back(i);
  for (const auto& q : p.c_e) e.c_e_values.push_back(q.value(y));
  for (std::size_t j = 0; j < p.c_i.size(); ++j) {
    e.c_i_values.push_back(p.c_i[j].value(y));
    if (e.c_i_values.back().is_zero()) e.active_ineq.push_back(j);
  }
  return e;
}

ConstraintJacobians constraint_jacobians(const AbsNormalProgram& p, const EvalResult& e) {
  const RatVector y = e.joint();
  ConstraintJacobians J;
  J.f_t = p.objective.gradient(e.t);
  auto fill = [&](const std::vector<QuadraticFunc>& fs, RatMatrix& dt, RatMatrix& dz) {
    dt = RatMatrix(fs.size(), p.n_t);
    dz = RatMatrix(fs.size(), p.s);
    for (std::size_t r = 0; r < fs.size(); ++r) {
      RatVector g = fs[r].gradient(y);
      for (std::size_t j = 0; j < p.n_t; ++j) dt(r, j) = g[j];
      for (std::size_t j = 0; j < p.s; ++j) dz(r, j) = g[p.n_t + j];
    }
  };
  fill(p.c_e, J.e_t, J.e_z);
  fill(p.c_i, J.i_t, J.i_z);
  fill(p.c_z, J.z_t, J.z_z);
  return J;
}

RatMatrix jacobian_z(const AbsNormalProgram& p, const EvalResult& e, const Signature& sigma) {
  if (sigma.size() != p.s) throw std::invalid_argument("jacobian_z: signature length mismatch");
  ConstraintJacobians J = constraint_jacobians(p, e);
  // Row i of dz/dt = Z_t row i + sum_{j<i} Z_z(i,j) sigma_j (row j of dz/dt).
  RatMatrix dz(p.s, p.n_t);
  for (std::size_t i = 0; i < p.s; ++i)
    for (std::size_t c = 0; c < p.n_t; ++c) {
      Rational v = J.z_t(i, c);
      for (std::size_t j = 0; j < i; ++j)
        if (!J.z_z(i, j).is_zero() && sigma[j] != 0) v += J.z_z(i, j) * Rational(sigma[j]) * dz(j, c);
      dz(i, c) = v;
    }
  return dz;
}

}  // namespace anfcq
