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
#include <stdexcept>
#include <string>
#include <vector>

#include "anfcq/matrix.hpp"

namespace anfcq {

// q(y) = constant + linear . y + 1/2 y^T hessian y, with a symmetric hessian.
struct QuadraticFunc {
  Rational constant;
  RatVector linear;
  RatMatrix hessian;

  QuadraticFunc() = default;
  explicit QuadraticFunc(std::size_t n) : linear(n), hessian(n, n) {}
  static QuadraticFunc affine(RatVector lin, Rational c = Rational(0));
  static QuadraticFunc coordinate(std::size_t n, std::size_t i, Rational coef = Rational(1));

  std::size_t dim() const { return linear.size(); }
  Rational value(const RatVector& y) const;
  RatVector gradient(const RatVector& y) const;
  bool is_affine() const { return hessian.is_zero(); }

  // x -> q(M x); M has dim() rows.
  QuadraticFunc compose(const RatMatrix& m) const;
  QuadraticFunc& operator+=(const QuadraticFunc& o);
  QuadraticFunc& operator-=(const QuadraticFunc& o);
  QuadraticFunc operator-() const;

  friend bool operator==(const QuadraticFunc&, const QuadraticFunc&) = default;
};

// Inequality-constrained program in abs-normal form over t in R^n:
//   min f(t)  s.t.  cE(t,|z|) = 0,  cI(t,|z|) >= 0,  cZ(t,|z|) = z.
// Constraint functions act on (t, zeta) with zeta = |z|, and switching row i
// may only depend on zeta_j for j < i.
struct AbsNormalProgram {
  std::string name;
  std::size_t n_t = 0;
  std::size_t s = 0;
  QuadraticFunc objective;              // over t
  std::vector<QuadraticFunc> c_e;       // over (t, zeta)
  std::vector<QuadraticFunc> c_i;       // over (t, zeta)
  std::vector<QuadraticFunc> c_z;       // over (t, zeta)
  unsigned smoothness_degree = 2;       // recorded as metadata only

  std::size_t m1() const { return c_e.size(); }
  std::size_t m2() const { return c_i.size(); }
  std::size_t joint_dim() const { return n_t + s; }
};

struct ValidationIssue {
  std::string code;  // "dimension", "asymmetric" or "triangularity"
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string summary() const;
};

class InvalidProgramError : public std::runtime_error {
 public:
  explicit InvalidProgramError(const ValidationReport& r)
      : std::runtime_error("invalid program: " + r.summary()), report(r) {}
  ValidationReport report;
};

ValidationReport validate(const AbsNormalProgram& p);

// Entries in {-1, 0, +1}.
using Signature = std::vector<int>;

Signature signature_of(const RatVector& z);
bool is_definite(const Signature& s);
// a is at least as definite as b and agrees with b on b's nonzero entries.
bool succeq(const Signature& a, const Signature& b);
std::string signature_label(const Signature& s);

struct EvalResult {
  RatVector t;
  RatVector z;
  RatVector abs_z;
  Signature sigma;
  std::vector<std::size_t> alpha;        // indices with z_i = 0
  std::vector<std::size_t> active_ineq;  // indices with cI_i = 0
  RatVector c_e_values;
  RatVector c_i_values;

  bool feasible() const;
  // (t, zeta) with zeta = |z|.
  RatVector joint() const;
};

// Solves the switching system by forward substitution and evaluates the constraints.
EvalResult eval(const AbsNormalProgram& p, const RatVector& t);

struct ConstraintJacobians {
  RatVector f_t;
  RatMatrix e_t, e_z;
  RatMatrix i_t, i_z;
  RatMatrix z_t, z_z;
};

// Partial derivatives at (t, |z|) split into t and zeta columns.
ConstraintJacobians constraint_jacobians(const AbsNormalProgram& p, const EvalResult& e);

// dz/dt on the selection with fixed signature: [I - dZ/dzeta diag(sigma)]^{-1} dZ/dt.
RatMatrix jacobian_z(const AbsNormalProgram& p, const EvalResult& e, const Signature& sigma);

}  // namespace anfcq
