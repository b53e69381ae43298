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
#include <string>
#include <vector>

#include "anfcq/polycone.hpp"
#include "anfcq/transforms.hpp"

namespace anfcq {

// Finite union of polyhedral cones; possibly nonconvex.
struct UnionCone {
  std::size_t dim = 0;
  std::vector<PolyCone> members;
  std::vector<std::string> labels;

  UnionCone() = default;
  explicit UnionCone(std::size_t n) : dim(n) {}
  void add(std::string label, PolyCone c);
  bool contains(const RatVector& d) const;
};

// Linearized cone of a smooth branch at its anchor: gradients of all
// equalities and of the active inequalities.
PolyCone lin_cone_branch(const SmoothBranchProblem& b);

// Abs-normal linearized cone at t, one polyhedral piece per sign pattern of
// the kink directions, built from the program Jacobians at (t, |z|).
UnionCone lin_cone_abs(const AbsNormalProgram& p, const EvalResult& e, const BranchLimits& limits = {});

// Linearized complementarity cone over (du, dv), one piece per subset P.
UnionCone compl_cone(const MpccPoint& pt, const BranchLimits& limits = {});

// Linearized cone of the counterpart: Jacobian rows intersected with the
// complementarity cone pieces.
UnionCone lin_cone_mpcc(const MpccProgram& mp, const MpccPoint& pt, const BranchLimits& limits = {});

enum class TangentStatus { Affine, BranchLICQ, BranchMFCQ, Annotated, Transported, Unknown };

std::string to_string(TangentStatus s);

// Outcome of trying to certify that a branch's tangent cone equals its
// linearized cone.
struct TangentCertificate {
  TangentStatus status = TangentStatus::Unknown;
  std::string detail;
  RatVector mfcq_direction;  // set for BranchMFCQ
};

TangentCertificate tangent_cone_branch(const SmoothBranchProblem& b);

// {E^T y + I^T l : l >= 0} for c = {E d = 0, I d >= 0}.
PolyCone dual_cone(const PolyCone& c);
// Intersection of member duals.
PolyCone dual_union(const UnionCone& u);

bool cone_contains(const PolyCone& outer, const PolyCone& inner);
bool cones_equal(const PolyCone& a, const PolyCone& b);

// Proof that a cone lies inside a union: a leaf names a member containing the
// current piece; an inner node splits the piece by a hyperplane into
// {split . d >= 0} (children[0]) and {split . d <= 0} (children[1]).
struct CoverTree {
  int member = -1;
  RatVector split;
  std::vector<CoverTree> children;
};

enum class CoverStatus { Covered, NotCovered, Unknown };

struct CoverResult {
  CoverStatus status = CoverStatus::Unknown;
  RatVector witness;  // NotCovered: a direction of c outside every member
  CoverTree tree;     // Covered
};

CoverResult union_covers(const UnionCone& u, const PolyCone& c, int depth_cap = 32);

// Re-validates a cover tree by checking each leaf's containment.
bool verify_cover_tree(const UnionCone& u, const PolyCone& c, const CoverTree& t);

// Every member of `inner` is covered by `outer`. Unknown if a cover search hits the cap.
CoverStatus union_contains_union(const UnionCone& outer, const UnionCone& inner, RatVector* witness = nullptr);

}  // namespace anfcq
