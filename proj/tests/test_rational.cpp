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

TEST_CASE("rational arithmetic is exact") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK((Rational(1, 3) * 3).str() == "1");
  CHECK(Rational(-4, 6).str() == "-2/3");
  CHECK(Rational(3, -9) == Rational(-1, 3));
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("rational parsing accepts fractions, integers and decimals") {
  CHECK(Rational::parse("1/2") == Rational(1, 2));
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK(Rational::parse("0.5") == Rational(1, 2));
  CHECK(Rational::parse("-0.125") == Rational(-1, 8));
  CHECK(Rational::parse("2.5e-1") == Rational(1, 4));
  CHECK(Rational::parse("3e2") == Rational(300));
  CHECK(Rational::parse(" 6/4 ").str() == "3/2");
  CHECK_THROWS_AS(Rational::parse("1/0"), RationalParseError);
  CHECK_THROWS_AS(Rational::parse("abc"), RationalParseError);
  CHECK_THROWS_AS(Rational::parse("1.2.3"), RationalParseError);
  CHECK_THROWS_AS(Rational::parse(""), RationalParseError);
}

TEST_CASE("rational string form round-trips") {
  testsupport::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    Rational r = rng.small_rational(50);
    CHECK(Rational::parse(r.str()) == r);
  }
}

TEST_CASE("primitive direction") {
  CHECK(primitive_direction({Rational(1, 2), Rational(-3, 4)}) == vec({2, -3}));
  CHECK(primitive_direction(vec({0, 0})) == vec({0, 0}));
  CHECK(primitive_direction(vec({-6, 4})) == vec({-3, 2}));
}

TEST_CASE("rank of small matrices") {
  CHECK(rank(mat({{1, 2}, {2, 4}})) == 1);
  CHECK(rank(mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == 3);
  CHECK(rank(RatMatrix(0, 3)) == 0);
  CHECK(rank(mat({{0, 0}, {0, 0}})) == 0);
  CHECK(rank(mat({{0, 1, 2}, {0, 2, 4}, {1, 0, 0}})) == 2);
}

TEST_CASE("rank agrees with plain elimination on random matrices") {
  testsupport::Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t m = static_cast<std::size_t>(rng.integer(1, 5)), n = static_cast<std::size_t>(rng.integer(1, 5));
    std::vector<RatVector> rows;
    for (std::size_t i = 0; i < m; ++i) rows.push_back(rng.sparse_int_vector(n));
    if (rng.coin() && m > 1) rows[m - 1] = rows[0] + Rational(2) * rows[m - 2];
    CHECK(rank(rows, n) == testsupport::oracle_rank(rows));
  }
}

TEST_CASE("nullspace vectors are annihilated and complete") {
  testsupport::Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t m = static_cast<std::size_t>(rng.integer(1, 4)), n = static_cast<std::size_t>(rng.integer(1, 5));
    RatMatrix a(0, n);
    for (std::size_t i = 0; i < m; ++i) a.append_row(rng.sparse_int_vector(n));
    auto ns = nullspace(a);
    CHECK(ns.size() + rank(a) == n);
    for (const auto& v : ns) CHECK(is_zero(a * v));
  }
}

TEST_CASE("solve_linear detects inconsistency") {
  RatVector x;
  CHECK(solve_linear(mat({{1, 1}, {2, 2}}), vec({1, 3}), x) == false);
  REQUIRE(solve_linear(mat({{1, 1}, {1, -1}}), vec({2, 0}), x));
  CHECK(x == vec({1, 1}));
}
