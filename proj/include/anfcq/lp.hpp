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
#include <optional>
#include <string>
#include <vector>

#include "anfcq/matrix.hpp"

namespace anfcq {

// min c^T x  s.t.  eq x = eq_rhs,  ge x >= ge_rhs,  x free.
// Rows of `ge` listed in `strict` must hold strictly; strict rows are only
// allowed in feasibility mode (no objective, or an all-zero objective).
struct LpProblem {
  std::size_t num_vars = 0;
  std::optional<RatVector> objective;
  RatMatrix eq;
  RatVector eq_rhs;
  RatMatrix ge;
  RatVector ge_rhs;
  std::vector<std::size_t> strict;

  explicit LpProblem(std::size_t n = 0) : num_vars(n), eq(0, n), ge(0, n) {}
  void add_eq(const RatVector& row, const Rational& rhs);
  void add_ge(const RatVector& row, const Rational& rhs);
  void add_strict(const RatVector& row, const Rational& rhs);
  bool feasibility_only() const;
};

enum class LpStatus { Feasible, Infeasible, Optimal, Unbounded };

std::string to_string(LpStatus s);

// Evidence for an LP outcome; which fields are populated depends on the status.
//   Feasible:   primal
//   Infeasible: dual_eq, dual_ge with eq^T y_eq + ge^T y_ge = 0, y_ge >= 0 and
//               either rhs^T y > 0, or rhs^T y >= 0 with positive weight on a strict row
//   Optimal:    primal, dual_eq, dual_ge with eq^T y_eq + ge^T y_ge = c, y_ge >= 0,
//               rhs^T y = c^T x = value
//   Unbounded:  primal (feasible) and ray with eq d = 0, ge d >= 0, c^T d < 0
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  RatVector primal;
  RatVector dual_eq;
  RatVector dual_ge;
  RatVector ray;
};

class LpDimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exact primal simplex with Bland's rule.
LpResult lp_solve(const LpProblem& lp);

// Re-validates the certificate in `r` by exact arithmetic. On failure `why`
// (if given) receives a short description.
bool certificate_valid(const LpProblem& lp, const LpResult& r, std::string* why = nullptr);

}  // namespace anfcq
