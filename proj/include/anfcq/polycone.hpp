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
#include <vector>

#include "anfcq/matrix.hpp"

namespace anfcq {

// Polyhedral cone {d : eq d = 0, ge d >= 0} in R^dim.
struct PolyCone {
  std::size_t dim = 0;
  RatMatrix eq;
  RatMatrix ge;

  PolyCone() = default;
  explicit PolyCone(std::size_t n) : dim(n), eq(0, n), ge(0, n) {}
  PolyCone(RatMatrix e, RatMatrix g);

  static PolyCone whole_space(std::size_t n) { return PolyCone(n); }
  static PolyCone origin(std::size_t n) { return PolyCone(RatMatrix::identity(n), RatMatrix(0, n)); }

  void add_eq(const RatVector& row) { eq.append_row(row); }
  void add_ge(const RatVector& row) { ge.append_row(row); }
  bool contains(const RatVector& d) const;
  PolyCone intersect(const PolyCone& other) const;
};

// Finite generators: cone(rays) + span(lineality).
struct ConeGenerators {
  std::size_t dim = 0;
  std::vector<RatVector> rays;
  std::vector<RatVector> lineality;

  // Rays together with both signs of every lineality vector.
  std::vector<RatVector> all_directions() const;
  // Dimension of the linear span.
  std::size_t span_dim() const;
};

// Double description, H to V. Rays are extreme modulo the lineality space and
// normalized to primitive integer vectors; the lineality basis is in reduced
// echelon form.
ConeGenerators dd_hrep_to_vrep(const PolyCone& c);

// Double description, V to H, through the dual cone.
PolyCone dd_vrep_to_hrep(const ConeGenerators& g);

// Dimension of the cone's linear span.
std::size_t cone_dim(const PolyCone& c);

}  // namespace anfcq
