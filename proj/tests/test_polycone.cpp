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
using testsupport::mat;
using testsupport::vec;

TEST_CASE("orthant has the unit rays") {
  PolyCone c(RatMatrix(0, 2), mat({{1, 0}, {0, 1}}));
  auto g = dd_hrep_to_vrep(c);
  CHECK(g.lineality.empty());
  CHECK(g.rays == std::vector<RatVector>{vec({0, 1}), vec({1, 0})});
}

TEST_CASE("a line is pure lineality") {
  ConeGenerators g;
  g.dim = 2;
  g.lineality = {vec({1, 1})};
  PolyCone h = dd_vrep_to_hrep(g);
  CHECK(h.ge.rows() == 0);
  REQUIRE(h.eq.rows() == 1);
  CHECK(primitive_direction(h.eq.row(0)) == (h.eq(0, 0).sign() > 0 ? vec({1, -1}) : vec({-1, 1})));
}

TEST_CASE("no generators gives the origin") {
  ConeGenerators g;
  g.dim = 2;
  PolyCone h = dd_vrep_to_hrep(g);
  CHECK(rank(h.eq) == 2);
  CHECK(h.contains(vec({0, 0})));
  CHECK_FALSE(h.contains(vec({1, 0})));
}

TEST_CASE("equalities of full rank give the origin") {
  PolyCone c(mat({{1, 0}, {0, 1}}), RatMatrix(0, 2));
  auto g = dd_hrep_to_vrep(c);
  CHECK(g.rays.empty());
  CHECK(g.lineality.empty());
  CHECK(g.span_dim() == 0);
}

TEST_CASE("half-plane has one ray and one lineality direction") {
  PolyCone c(RatMatrix(0, 2), mat({{1, 0}}));
  auto g = dd_hrep_to_vrep(c);
  CHECK(g.rays == std::vector<RatVector>{vec({1, 0})});
  CHECK(g.lineality == std::vector<RatVector>{vec({0, 1})});
}

TEST_CASE("square pyramid over four facets") {
  // {x3 >= |x1|, x3 >= |x2|}: four extreme rays (+-1, +-1, 1).
  PolyCone c(RatMatrix(0, 3), mat({{1, 0, 1}, {-1, 0, 1}, {0, 1, 1}, {0, -1, 1}}));
  auto g = dd_hrep_to_vrep(c);
  CHECK(g.rays.size() == 4);
  for (const auto& r : g.rays) {
    CHECK(r[2] == Rational(1));
    CHECK(r[0].abs() == Rational(1));
    CHECK(r[1].abs() == Rational(1));
  }
}

TEST_CASE("random cones: generators and H-rep describe the same set") {
  testsupport::Rng rng(99);
  for (int trial = 0; trial < 120; ++trial) {
    std::size_t n = static_cast<std::size_t>(rng.integer(1, 4));
    PolyCone c(n);
    long ne = rng.integer(0, 1), ng = rng.integer(0, 5);
    for (long i = 0; i < ne; ++i) c.add_eq(rng.sparse_int_vector(n));
    for (long i = 0; i < ng; ++i) c.add_ge(rng.sparse_int_vector(n));
    auto g = dd_hrep_to_vrep(c);
    for (const auto& d : g.all_directions()) CHECK(c.contains(d));
    // Extremality: each ray is tight on enough rows to pin it down modulo lineality.
    for (const auto& r : g.rays) {
      std::vector<RatVector> tight = c.eq.row_list();
      for (std::size_t i = 0; i < c.ge.rows(); ++i)
        if (dot(c.ge.row(i), r).is_zero()) tight.push_back(c.ge.row(i));
      CHECK(testsupport::oracle_rank(tight) + g.lineality.size() + 1 == n);
    }
    // Random points: membership by rows agrees with membership in the generated cone.
    for (int k = 0; k < 6; ++k) {
      RatVector x = rng.vector(n, 2);
      CHECK(c.contains(x) == testsupport::in_generated_cone(x, g.rays, g.lineality));
    }
    // Biduality through the V to H route.
    PolyCone back = dd_vrep_to_hrep(g);
    for (int k = 0; k < 6; ++k) {
      RatVector x = rng.vector(n, 2);
      CHECK(c.contains(x) == back.contains(x));
    }
  }
}
