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

#include "anfcq/program.hpp"

namespace anfcq {

// Slack reformulation. The lifted program is again an abs-normal program with
// smooth variables (t, w) and switching variables (z, zw): the inequalities
// become cI(t,|z|) - |zw| = 0 and the new switching rows are zw = w.
struct SlackProgram {
  AbsNormalProgram base;
  AbsNormalProgram lifted;
};

SlackProgram to_slack(const AbsNormalProgram& p);

// (t, w) with w_i = sign_i * cI_i(t, |z|). Signs default to +1 and only matter
// where cI_i is nonzero.
RatVector lift_point(const AbsNormalProgram& p, const RatVector& t, const std::vector<int>& w_signs = {});

// Counterpart with complementarity constraints over y = (t, u, v):
//   min f(t)  s.t.  cE(t,u+v) = 0,  cZ(t,u+v) - (u - v) = 0,  cI(t,u+v) >= 0,
//   0 <= u  _|_  v >= 0.
struct MpccProgram {
  std::string name;
  std::size_t n_t = 0;
  std::size_t s = 0;
  std::size_t m_e = 0;  // leading equalities that come from cE; the remaining s come from cZ
  QuadraticFunc objective;
  std::vector<QuadraticFunc> equalities;
  std::vector<QuadraticFunc> inequalities;

  std::size_t num_vars() const { return n_t + 2 * s; }
  std::size_t u_index(std::size_t i) const { return n_t + i; }
  std::size_t v_index(std::size_t i) const { return n_t + s + i; }
};

MpccProgram to_mpcc(const AbsNormalProgram& p);

// A point of the counterpart with its complementarity index sets.
struct MpccPoint {
  RatVector y;
  std::vector<std::size_t> u_plus;      // u_i > 0
  std::vector<std::size_t> v_plus;      // v_i > 0
  std::vector<std::size_t> degenerate;  // u_i = v_i = 0
  Signature anchor_sigma() const;       // +1 on u_plus, -1 on v_plus, 0 on degenerate
};

MpccPoint make_mpcc_point(const MpccProgram& mp, const RatVector& y);

class InfeasiblePointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Feasibility checks. On failure `why` receives the first violated condition.
bool is_feasible_anf(const AbsNormalProgram& p, const RatVector& t_and_z, std::string* why = nullptr);
bool is_feasible_mpcc(const MpccProgram& mp, const RatVector& y, std::string* why = nullptr);

// phi(t,u,v) = (t, u - v) and its inverse (t, [z]+, [z]-). Both require feasible input.
RatVector phi(const AbsNormalProgram& p, const MpccProgram& mp, const RatVector& y);
RatVector phi_inv(const AbsNormalProgram& p, const MpccProgram& mp, const RatVector& t_and_z);

// Direction maps between the counterpart and the abs-normal variables.
RatVector psi(const MpccProgram& mp, const RatVector& dy);
RatVector psi_inv(const MpccProgram& mp, const MpccPoint& pt, const RatVector& dx);
RatMatrix psi_matrix(const MpccProgram& mp);

// Selects a smooth piece: a definite signature for the abs-normal form, or a
// subset P of the degenerate indices for the counterpart.
struct BranchSpec {
  enum class Kind { Signature, Partition };
  Kind kind = Kind::Signature;
  Signature anchor_sigma;
  Signature sigma;
  std::vector<std::size_t> partition;

  std::string label() const;
  std::vector<std::size_t> degenerate() const;
};

// Sigma <-> P with P = {i degenerate : sigma_i = -1}.
BranchSpec branch_correspondence(const BranchSpec& b);

// A smooth program with quadratic data; inequalities read g(x) >= 0.
struct SmoothBranchProblem {
  BranchSpec spec;
  std::string label;
  std::size_t num_vars = 0;
  QuadraticFunc objective;
  std::vector<QuadraticFunc> equalities;
  std::vector<QuadraticFunc> inequalities;
  std::vector<std::string> eq_names;
  std::vector<std::string> ineq_names;
  RatVector anchor;
};

struct BranchLimits {
  std::size_t max_branches = std::size_t{1} << 16;
};

class BranchLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

SmoothBranchProblem anf_branch(const AbsNormalProgram& p, const EvalResult& e, const Signature& sigma);
SmoothBranchProblem mpcc_branch(const MpccProgram& mp, const MpccPoint& pt,
                                const std::vector<std::size_t>& partition);

// All definite sigma at least as definite as sigma(t), in lexicographic order
// with + before - on the zero entries of sigma(t).
std::vector<SmoothBranchProblem> enumerate_anf_branches(const AbsNormalProgram& p, const EvalResult& e,
                                                        const BranchLimits& limits = {});
// All P in the matching order, so branch k of both lists correspond.
std::vector<SmoothBranchProblem> enumerate_mpcc_branches(const MpccProgram& mp, const MpccPoint& pt,
                                                         const BranchLimits& limits = {});

}  // namespace anfcq
