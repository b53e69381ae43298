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

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "anfcq/cq.hpp"
#include "anfcq/program.hpp"

namespace anfcq {

struct ProblemPoint {
  std::string label;
  RatVector t;
  bool minimizer = false;
  std::vector<int> w_signs;  // slack representative, empty for the default
};

// Expected outcomes for one point, keyed by check name (see expected_keys()).
struct ExpectedBlock {
  std::string point;
  std::map<std::string, Verdict> verdicts;
  std::vector<std::string> open_converse;  // relation ids expected to show rhs holds while lhs fails
};

const std::vector<std::string>& expected_keys();

struct ProblemFile {
  std::string path;
  std::string text;  // raw bytes, hashed into the report digest
  std::string description;
  AbsNormalProgram program;
  std::vector<ProblemPoint> points;
  AnnotationSet annotations;
  std::vector<ExpectedBlock> expected;

  const ProblemPoint* find_point(const std::string& label) const;
};

class ProblemParseError : public std::runtime_error {
 public:
  ProblemParseError(const std::string& origin, std::size_t line, std::size_t col, const std::string& pointer,
                    const std::string& msg);
  std::size_t line = 0, col = 0;
  std::string pointer;
};

// Strict: unknown fields are rejected, rationals are exact ("3", "-1/2", "0.25"),
// and annotations must name branches that exist at their point.
ProblemFile parse_problem(const std::string& path);
ProblemFile parse_problem_text(const std::string& text, const std::string& origin = "<input>");

// "0,1/2,-3" -> rationals.
RatVector parse_point_list(const std::string& s);

}  // namespace anfcq
