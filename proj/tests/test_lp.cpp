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
#include "doctest.h"
#include "test_support.hpp"

using namespace anfcq;
using testsupport::vec;

TEST_CASE("maximize x subject to 1 - x >= 0") {
  LpProblem lp(1);
  lp.objective = vec({-1});
  lp.add_ge(vec({-1}), Rational(-1));
  LpResult r = lp_solve(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.primal == vec({1}));
  CHECK(r.value == Rational(-1));
  CHECK(r.dual_ge == vec({1}));
  CHECK(certificate_valid(lp, r));
}

TEST_CASE("contradictory bounds give a Farkas ray") {
  LpProblem lp(1);
  lp.add_ge(vec({1}), Rational(1));
  lp.add_ge(vec({-1}), Rational(0));
  LpResult r = lp_solve(lp);
  REQUIRE(r.status == LpStatus::Infeasible);
  CHECK(primitive_direction(r.dual_ge) == vec({1, 1}));
  CHECK(certificate_valid(lp, r));
}

TEST_CASE("a pinched feasible set is found") {
  LpProblem lp(1);
  lp.add_ge(vec({1}), Rational(0));
  lp.add_ge(vec({-1}), Rational(0));
  LpResult r = lp_solve(lp);
  REQUIRE(r.status == LpStatus::Feasible);
  CHECK(r.primal == vec({0}));
}

TEST_CASE("strict inequality with no room is infeasible") {
  LpProblem lp(1);
  lp.add_strict(vec({1}), Rational(0));
  lp.add_ge(vec({-1}), Rational(0));
  LpResult r = lp_solve(lp);
  REQUIRE(r.status == LpStatus::Infeasible);
  CHECK(certificate_valid(lp, r));
  CHECK(r.dual_ge[0].sign() > 0);
}

TEST_CASE("strict inequality with room is feasible") {
  LpProblem lp(2);
  lp.add_strict(vec({1, 0}), Rational(0));
  lp.add_strict(vec({0, 1}), Rational(0));
  lp.add_eq(vec({1, 1}), Rational(1));
  LpResult r = lp_solve(lp);
  REQUIRE(r.status == LpStatus::Feasible);
  CHECK(r.primal[0].sign() > 0);
  CHECK(r.primal[1].sign() > 0);
}

TEST_CASE("unbounded LP returns a descent ray") {
  LpProblem lp(2);
  lp.objective = vec({-1, 0});
  lp.add_ge(vec({0, 1}), Rational(0));
  LpResult r = lp_solve(lp);
  REQUIRE(r.status == LpStatus::Unbounded);
  CHECK(certificate_valid(lp, r));
}

TEST_CASE("redundant equality rows are tolerated") {
  LpProblem lp(2);
  lp.objective = vec({1, 1});
  lp.add_eq(vec({1, 1}), Rational(2));
  lp.add_eq(vec({2, 2}), Rational(4));
  lp.add_ge(vec({1, 0}), Rational(0));
  lp.add_ge(vec({0, 1}), Rational(0));
  LpResult r = lp_solve(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == Rational(2));
}

TEST_CASE("dimension mismatches are rejected") {
  LpProblem lp(2);
  lp.eq = RatMatrix(1, 3);
  lp.eq_rhs = vec({0});
  CHECK_THROWS_AS(lp_solve(lp), LpDimensionError);
  LpProblem lp2(1);
  lp2.objective = vec({1});
  lp2.add_strict(vec({1}), Rational(0));
  CHECK_THROWS_AS(lp_solve(lp2), std::invalid_argument);
}

TEST_CASE("tampered certificates are rejected") {
  LpProblem lp(1);
  lp.add_ge(vec({1}), Rational(1));
  lp.add_ge(vec({-1}), Rational(0));
  LpResult r = lp_solve(lp);
  r.dual_ge[0] += 1;
  CHECK_FALSE(certificate_valid(lp, r));
}

TEST_CASE("random LPs: certificates re-validate and bounded cases match vertex enumeration") {
  testsupport::Rng rng(20240);
  int oracle_checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = static_cast<std::size_t>(rng.integer(1, 5));
    bool boxed = n <= 3 && rng.coin();
    LpProblem lp = testsupport::random_lp(rng, n, boxed);
    LpResult r = lp_solve(lp);
    CHECK(certificate_valid(lp, r));
    if (boxed) {
      auto o = testsupport::vertex_oracle(lp);
      bool feasible = r.status != LpStatus::Infeasible;
      CHECK(feasible == o.feasible);
      if (o.feasible && lp.objective && r.status == LpStatus::Optimal) CHECK(r.value == o.best);
      if (boxed) CHECK(r.status != LpStatus::Unbounded);
      ++oracle_checked;
    }
  }
  CHECK(oracle_checked > 30);
}

TEST_CASE("random strict systems: certificates re-validate") {
  testsupport::Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = static_cast<std::size_t>(rng.integer(1, 4));
    LpProblem lp(n);
    long rows = rng.integer(1, 5);
    for (long i = 0; i < rows; ++i) {
      RatVector row = rng.sparse_int_vector(n, 2);
      if (rng.coin()) lp.add_strict(row, Rational(rng.integer(-1, 1)));
      else lp.add_ge(row, Rational(rng.integer(-1, 1)));
    }
    LpResult r = lp_solve(lp);
    CHECK(certificate_valid(lp, r));
  }
}
