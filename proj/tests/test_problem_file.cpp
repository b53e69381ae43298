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
#include "corpus_support.hpp"
#include "test_support.hpp"

#include "anfcq/problem_file.hpp"

using namespace anfcq;
using testsupport::vec;

namespace {

// t2 = |t1|, objective t2.
const char* kBase = R"({
  "$schema": "problem.schema.json",
  "name": "kink",
  "dimensions": {"n_t": 2, "s": 1, "m1": 1, "m2": 0},
  "objective": {"linear": ["0", 1]},
  "equalities": [{"linear": ["0", "1", "-1"]}],
  "switching": [{"linear": ["1", "0", "0"]}],
  "points": [{"label": "origin", "t": ["0", "0"], "minimizer": true}],
  "tangent_annotations": [
    {"point": "origin", "formulation": "i-anf", "branch": "+", "pieces": [{"equalities": [["1", "-1", "0"]]}]}
  ],
  "expected": {"origin": {"akq": "holds"}}
})";

std::string with(const std::string& from, const std::string& to) {
  std::string s = kBase;
  auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  s.replace(pos, from.size(), to);
  return s;
}

ProblemParseError error_of(const std::string& text) {
  try {
    parse_problem_text(text, "t.json");
  } catch (const ProblemParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  return ProblemParseError("", 0, 0, "", "");
}

}  // namespace

TEST_CASE("a small problem parses") {
  auto pf = parse_problem_text(kBase);
  CHECK(pf.program.name == "kink");
  CHECK(pf.program.n_t == 2);
  CHECK(pf.program.objective.linear == vec({0, 1}));
  REQUIRE(pf.points.size() == 1);
  CHECK(pf.points[0].minimizer);
  REQUIRE(pf.annotations.items.size() == 1);
  CHECK(pf.annotations.items[0].branch_label == "σ=+");
  REQUIRE(pf.expected.size() == 1);
  CHECK(pf.expected[0].verdicts.at("akq") == Verdict::Holds);
  CHECK(pf.find_point("origin") != nullptr);
  CHECK(pf.find_point("nowhere") == nullptr);
}

TEST_CASE("decimals and fractions are exact") {
  auto pf = parse_problem_text(with(R"("linear": ["0", 1])", R"("linear": ["0.25", "-3/4"])"));
  CHECK(pf.program.objective.linear == RatVector{Rational(1, 4), Rational(-3, 4)});
}

TEST_CASE("errors carry line, column and pointer") {
  auto e = error_of(with(R"("minimizer": true)", R"("minimiser": true)"));
  CHECK(e.pointer == "/points/0/minimiser");
  CHECK(e.line == 8);
  CHECK(std::string(e.what()).rfind("t.json:8:", 0) == 0);

  e = error_of(with(R"(["0", 1])", R"(["0", 1.5])"));
  CHECK(e.pointer == "/objective/linear/1");

  e = error_of(with(R"("n_t": 2)", R"("n_t": 2 "s": 1,)"));
  CHECK(e.line == 4);
}

TEST_CASE("structural defects are rejected") {
  CHECK(error_of(with(R"("m1": 1)", R"("m1": 2)")).pointer == "/equalities");
  CHECK(error_of(with(R"(["1", "0", "0"])", R"(["0", "0", "1"])")).pointer == "/switching");
  CHECK(error_of(with(R"("t": ["0", "0"])", R"("t": ["1", "0"])")).pointer == "/points/0/t");
  CHECK(error_of(with(R"("label": "origin")", R"("label": "o")")).pointer == "/tangent_annotations/0/point");
  CHECK(error_of(with(R"("branch": "+")", R"("branch": "++")")).pointer == "/tangent_annotations/0/branch");
  CHECK(error_of(with(R"("branch": "+")", R"("branch": "0")")).pointer == "/tangent_annotations/0/branch");
  CHECK(error_of(with(R"("akq": "holds")", R"("akq": "yes")")).pointer == "/expected/origin/akq");
  CHECK(error_of(with(R"("akq": "holds")", R"("acq": "holds")")).pointer == "/expected/origin/acq");
}

TEST_CASE("annotations must name a branch at their point") {
  // At t = (1, 1) only the + branch exists.
  std::string s = with(R"("t": ["0", "0"])", R"("t": ["1", "1"])");
  s.replace(s.find(R"("branch": "+")"), 13, R"("branch": "-")");
  CHECK(error_of(s).pointer == "/tangent_annotations/0/branch");
}

TEST_CASE("point lists") {
  CHECK(parse_point_list("0, 1/2,-3") == RatVector{Rational(0), Rational(1, 2), Rational(-3)});
  CHECK(parse_point_list("0.5") == RatVector{Rational(1, 2)});
  CHECK_THROWS(parse_point_list("1,x"));
}

TEST_CASE("every corpus file parses and lists only known expectation keys") {
  const auto& keys = expected_keys();
  auto names = testsupport::corpus_names();
  CHECK(names.size() >= 7);
  for (const auto& name : names) {
    CAPTURE(name);
    auto pf = testsupport::load_corpus(name);
    CHECK_FALSE(pf.points.empty());
    for (const auto& ex : pf.expected)
      for (const auto& [k, v] : ex.verdicts) CHECK(std::find(keys.begin(), keys.end(), k) != keys.end());
  }
}
