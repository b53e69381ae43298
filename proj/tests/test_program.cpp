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

#include "anfcq/program.hpp"

using namespace anfcq;
using testsupport::mat;
using testsupport::vec;

namespace {

// t2 = |t1| written as cE = t2 - zeta, cZ = t1.
AbsNormalProgram abs_graph() {
  AbsNormalProgram p;
  p.name = "graph";
  p.n_t = 2;
  p.s = 1;
  p.objective = QuadraticFunc::coordinate(2, 1);
  p.c_e.push_back(QuadraticFunc::affine(vec({0, 1, -1})));
  p.c_z.push_back(QuadraticFunc::coordinate(3, 0));
  return p;
}

// z1 = t1, z2 = |z1| - 1.
AbsNormalProgram nested() {
  AbsNormalProgram p;
  p.n_t = 1;
  p.s = 2;
  p.objective = QuadraticFunc(1);
  p.c_z.push_back(QuadraticFunc::coordinate(3, 0));
  p.c_z.push_back(QuadraticFunc::affine(vec({0, 1, 0}), Rational(-1)));
  return p;
}

}  // namespace

TEST_CASE("quadratic value and gradient use the half-hessian convention") {
  QuadraticFunc q(1);
  q.constant = 1;
  q.linear = vec({2});
  q.hessian(0, 0) = 2;
  CHECK(q.value(vec({3})) == Rational(16));
  CHECK(q.gradient(vec({3})) == vec({8}));
  CHECK_FALSE(q.is_affine());
}

TEST_CASE("composition agrees with evaluation at the image") {
  testsupport::Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    QuadraticFunc q(3);
    q.constant = rng.small_rational();
    q.linear = rng.vector(3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i; j < 3; ++j) q.hessian(i, j) = q.hessian(j, i) = rng.small_rational();
    RatMatrix m(3, 2);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 2; ++j) m(i, j) = rng.small_rational();
    RatVector x = rng.vector(2);
    CHECK(q.compose(m).value(x) == q.value(m * x));
  }
}

TEST_CASE("sum and negation act pointwise") {
  QuadraticFunc a = QuadraticFunc::affine(vec({1, 2}), Rational(3));
  QuadraticFunc b = QuadraticFunc::coordinate(2, 1, Rational(5));
  QuadraticFunc c = a;
  c += b;
  c -= a;
  CHECK(c == b);
  CHECK((-b).value(vec({1, 1})) == Rational(-5));
}

TEST_CASE("validation flags each defect") {
  CHECK(validate(abs_graph()).ok());

  auto p = abs_graph();
  p.c_z[0] = QuadraticFunc::coordinate(3, 2);
  auto r = validate(p);
  REQUIRE_FALSE(r.ok());
  CHECK(r.issues[0].code == "triangularity");

  p = abs_graph();
  p.c_e[0].hessian(0, 1) = 1;
  r = validate(p);
  REQUIRE_FALSE(r.ok());
  CHECK(r.issues[0].code == "asymmetric");

  p = abs_graph();
  p.objective = QuadraticFunc(3);
  r = validate(p);
  REQUIRE_FALSE(r.ok());
  CHECK(r.issues[0].code == "dimension");
}

TEST_CASE("later switching rows may read earlier kinks") {
  CHECK(validate(nested()).ok());
  auto p = nested();
  p.c_z[0] = QuadraticFunc::affine(vec({0, 0, 1}));
  CHECK_FALSE(validate(p).ok());
}

TEST_CASE("signatures") {
  CHECK(signature_of(vec({3, 0, -1})) == Signature{1, 0, -1});
  CHECK(is_definite({1, -1}));
  CHECK_FALSE(is_definite({1, 0}));
  CHECK(succeq({1, -1}, {1, 0}));
  CHECK(succeq({1, 0}, {1, 0}));
  CHECK_FALSE(succeq({-1, -1}, {1, 0}));
  CHECK_FALSE(succeq({1, 0}, {1, 1}));
  CHECK(signature_label({1, -1, 0}) == "σ=+-0");
}

TEST_CASE("evaluation on the graph of the absolute value") {
  auto p = abs_graph();
  auto e = eval(p, vec({-2, 2}));
  CHECK(e.z == vec({-2}));
  CHECK(e.abs_z == vec({2}));
  CHECK(e.sigma == Signature{-1});
  CHECK(e.alpha.empty());
  CHECK(e.feasible());
  CHECK(e.joint() == vec({-2, 2, 2}));

  e = eval(p, vec({0, 0}));
  CHECK(e.alpha == std::vector<std::size_t>{0});
  CHECK(e.feasible());

  CHECK_FALSE(eval(p, vec({1, 0})).feasible());
}

TEST_CASE("forward substitution through nested kinks") {
  auto e = eval(nested(), vec({-1}));
  CHECK(e.z == vec({-1, 0}));
  CHECK(e.sigma == Signature{-1, 0});
  CHECK(e.alpha == std::vector<std::size_t>{1});
}

TEST_CASE("jacobians split the t and zeta columns") {
  auto p = abs_graph();
  auto e = eval(p, vec({1, 1}));
  auto j = constraint_jacobians(p, e);
  CHECK(j.f_t == vec({0, 1}));
  CHECK(j.e_t.row(0) == vec({0, 1}));
  CHECK(j.e_z.row(0) == vec({-1}));
  CHECK(j.z_t.row(0) == vec({1, 0}));
  CHECK(j.z_z.row(0) == vec({0}));
}

TEST_CASE("dz/dt matches exact differences on an affine selection") {
  // Affine switching functions, so z is piecewise affine in t and exact
  // differences inside one selection equal the Jacobian.
  testsupport::Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    AbsNormalProgram p;
    p.n_t = 2;
    p.s = 3;
    p.objective = QuadraticFunc(2);
    for (std::size_t i = 0; i < 3; ++i) {
      RatVector row = rng.vector(5, 2);
      for (std::size_t j = 2 + i; j < 5; ++j) row[j] = 0;
      p.c_z.push_back(QuadraticFunc::affine(row, rng.small_rational()));
    }
    RatVector t = rng.vector(2);
    auto e = eval(p, t);
    if (!is_definite(e.sigma)) continue;
    RatMatrix jz = jacobian_z(p, e, e.sigma);
    RatVector d = rng.vector(2);
    // Shrink the step until the signature is unchanged.
    Rational h(1);
    EvalResult e2;
    for (int k = 0; k < 40; ++k, h = h / Rational(2)) {
      e2 = eval(p, t + h * d);
      if (e2.sigma == e.sigma) break;
    }
    REQUIRE(e2.sigma == e.sigma);
    CHECK(e2.z - e.z == h * (jz * d));
  }
}
