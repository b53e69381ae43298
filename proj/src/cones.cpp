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

#include "anfcq/cones.hpp"

#include "anfcq/lp.hpp"

namespace anfcq {

void UnionCone::add(std::string label, PolyCone c) {
  if (c.dim != dim) throw std::invalid_argument("UnionCone::add: dimension mismatch");
  labels.push_back(std::move(label));
  members.push_back(std::move(c));
}

bool UnionCone::contains(const RatVector& d) const {
  for (const auto& m : members)
    if (m.contains(d)) return true;
  return false;
}

PolyCone lin_cone_branch(const SmoothBranchProblem& b) {
  PolyCone c(b.num_vars);
  for (const auto& h : b.equalities) c.add_eq(h.gradient(b.anchor));
  for (const auto& g : b.inequalities)
    if (g.value(b.anchor).is_zero()) c.add_ge(g.gradient(b.anchor));
  return c;
}

namespace {

void check_piece_count(std::size_t k, const BranchLimits& limits) {
  if (k >= 63 || (std::size_t{1} << k) > limits.max_branches)
    throw BranchLimitError("2^" + std::to_string(k) + " cone pieces exceed the limit of " +
                           std::to_string(limits.max_branches));
}

}  // namespace

UnionCone lin_cone_abs(const AbsNormalProgram& p, const EvalResult& e, const BranchLimits& limits) {
  const std::size_t n = p.n_t, s = p.s, N = n + s;
  const ConstraintJacobians J = constraint_jacobians(p, e);
  const auto& a = e.alpha;
  check_piece_count(a.size(), limits);
  UnionCone out(N);
  for (std::size_t mask = 0; mask < (std::size_t{1} << a.size()); ++mask) {
    // d zeta_i = orient_i * d z_i: the fixed sign off the kink, the piece's sign on it.
    Signature orient = e.sigma;
    for (std::size_t k = 0; k < a.size(); ++k) orient[a[k]] = ((mask >> (a.size() - 1 - k)) & 1U) ? -1 : 1;
    auto row = [&](const RatMatrix& dt, const RatMatrix& dz, std::size_t r) {
      RatVector v(N);
      for (std::size_t j = 0; j < n; ++j) v[j] = dt(r, j);
      for (std::size_t i = 0; i < s; ++i) v[n + i] = dz(r, i) * Rational(orient[i]);
      return v;
    };
    PolyCone c(N);
    for (std::size_t r = 0; r < p.m1(); ++r) c.add_eq(row(J.e_t, J.e_z, r));
    for (auto r : e.active_ineq) c.add_ge(row(J.i_t, J.i_z, r));
    for (std::size_t r = 0; r < s; ++r) {
      RatVector v = row(J.z_t, J.z_z, r);
      v[n + r] -= 1;
      c.add_eq(v);
    }
    for (auto i : a) {
      RatVector v(N);
      v[n + i] = orient[i];
      c.add_ge(v);
    }
    out.add(signature_label(orient), std::move(c));
  }
  return out;
}

UnionCone compl_cone(const MpccPoint& pt, const BranchLimits& limits) {
  const Signature anchor = pt.anchor_sigma();
  const std::size_t s = anchor.size();
  const auto& d = pt.degenerate;
  check_piece_count(d.size(), limits);
  UnionCone out(2 * s);
  for (std::size_t mask = 0; mask < (std::size_t{1} << d.size()); ++mask) {
    std::vector<bool> in_p(s, false);
    BranchSpec spec;
    spec.kind = BranchSpec::Kind::Partition;
    spec.anchor_sigma = anchor;
    for (std::size_t k = 0; k < d.size(); ++k)
      if ((mask >> (d.size() - 1 - k)) & 1U) {
        in_p[d[k]] = true;
        spec.partition.push_back(d[k]);
      }
    PolyCone c(2 * s);
    for (std::size_t i = 0; i < s; ++i) {
      RatVector du(2 * s), dv(2 * s);
      du[i] = 1;
      dv[s + i] = 1;
      if (anchor[i] < 0) c.add_eq(du);
      else if (anchor[i] > 0) c.add_eq(dv);
      else if (in_p[i]) { c.add_eq(du); c.add_ge(dv); }
      else { c.add_eq(dv); c.add_ge(du); }
    }
    out.add(spec.label(), std::move(c));
  }
  return out;
}

UnionCone lin_cone_mpcc(const MpccProgram& mp, const MpccPoint& pt, const BranchLimits& limits) {
  const std::size_t N = mp.num_vars(), n = mp.n_t, s = mp.s;
  PolyCone base(N);
  for (const auto& h : mp.equalities) base.add_eq(h.gradient(pt.y));
  for (const auto& g : mp.inequalities)
    if (g.value(pt.y).is_zero()) base.add_ge(g.gradient(pt.y));
  UnionCone comp = compl_cone(pt, limits);
  UnionCone out(N);
  auto embed = [&](const RatVector& r) {
    RatVector v(N);
    for (std::size_t k = 0; k < 2 * s; ++k) v[n + k] = r[k];
    return v;
  };
  for (std::size_t k = 0; k < comp.members.size(); ++k) {
    PolyCone c = base;
    for (const auto& r : comp.members[k].eq.row_list()) c.add_eq(embed(r));
    for (const auto& r : comp.members[k].ge.row_list()) c.add_ge(embed(r));
    out.add(comp.labels[k], std::move(c));
  }
  return out;
}

std::string to_string(TangentStatus s) {
  switch (s) {
    case TangentStatus::Affine: return "affine";
    case TangentStatus::BranchLICQ: return "licq";
    case TangentStatus::BranchMFCQ: return "mfcq";
    case TangentStatus::Annotated: return "annotated";
    case TangentStatus::Transported: return "transported";
    case TangentStatus::Unknown: return "unknown";
  }
  return "?";
}

TangentCertificate tangent_cone_branch(const SmoothBranchProblem& b) {
  std::vector<RatVector> eq_grads, act_grads;
  bool affine = true;
  for (const auto& h : b.equalities) {
    eq_grads.push_back(h.gradient(b.anchor));
    affine = affine && h.is_affine();
  }
  for (const auto& g : b.inequalities)
    if (g.value(b.anchor).is_zero()) {
      act_grads.push_back(g.gradient(b.anchor));
      affine = affine && g.is_affine();
    }
  TangentCertificate cert;
  if (affine) {
    cert.status = TangentStatus::Affine;
    cert.detail = "equalities and active inequalities are affine";
    return cert;
  }
  std::vector<RatVector> all = eq_grads;
  all.insert(all.end(), act_grads.begin(), act_grads.end());
  const std::size_t r_all = rank(all, b.num_vars);
  if (r_all == all.size()) {
    cert.status = TangentStatus::BranchLICQ;
    cert.detail = "active gradients have full rank " + std::to_string(r_all);
    return cert;
  }
  const std::size_t r_eq = rank(eq_grads, b.num_vars);
  if (r_eq == eq_grads.size()) {
    LpProblem lp(b.num_vars);
    for (const auto& g : eq_grads) lp.add_eq(g, Rational(0));
    for (const auto& g : act_grads) lp.add_strict(g, Rational(0));
    LpResult r = lp_solve(lp);
    if (r.status == LpStatus::Feasible) {
      cert.status = TangentStatus::BranchMFCQ;
      cert.detail = "equality gradients independent with a strictly interior direction";
      cert.mfcq_direction = r.primal;
      return cert;
    }
  }
  cert.status = TangentStatus::Unknown;
  cert.detail = "no certificate: rank " + std::to_string(r_all) + " of " + std::to_string(all.size()) +
                " active gradients";
  return cert;
}

PolyCone dual_cone(const PolyCone& c) {
  ConeGenerators g;
  g.dim = c.dim;
  g.rays = c.ge.row_list();
  g.lineality = c.eq.row_list();
  return dd_vrep_to_hrep(g);
}

PolyCone dual_union(const UnionCone& u) {
  PolyCone out(u.dim);
  for (const auto& m : u.members) out = out.intersect(dual_cone(m));
  return out;
}

bool cone_contains(const PolyCone& outer, const PolyCone& inner) {
  if (outer.dim != inner.dim) throw std::invalid_argument("cone_contains: dimension mismatch");
  for (const auto& d : dd_hrep_to_vrep(inner).all_directions())
    if (!outer.contains(d)) return false;
  return true;
}

bool cones_equal(const PolyCone& a, const PolyCone& b) { return cone_contains(a, b) && cone_contains(b, a); }

namespace {

// A direction in the relative interior of `c` that avoids every member of u,
// given that each member meets c in a lower-dimensional set.
RatVector generic_witness(const UnionCone& u, const ConeGenerators& g) {
  std::vector<RatVector> dirs = g.all_directions();
  for (const auto& d : dirs)
    if (!u.contains(d)) return primitive_direction(d);
  RatVector sum(g.dim);
  for (const auto& d : dirs) sum = sum + d;
  if (!is_zero(sum) && !u.contains(sum)) return primitive_direction(sum);
  // Points sum_j (1 + lambda^j) d_j lie in the relative interior; each member
  // contains at most |dirs| of them, so this search terminates.
  const std::size_t bound = (u.members.size() + 1) * (dirs.size() + 1) + 2;
  for (std::size_t lam = 2; lam <= bound; ++lam) {
    RatVector p(g.dim);
    Rational power(1);
    for (const auto& d : dirs) {
      power *= Rational(static_cast<long>(lam));
      p = p + (Rational(1) + power) * d;
    }
    if (!u.contains(p)) return primitive_direction(p);
  }
  throw std::logic_error("generic_witness: no witness found");
}

CoverResult cover(const UnionCone& u, const std::vector<int>& candidates, const PolyCone& c, int depth,
                  int cap) {
  const ConeGenerators g = dd_hrep_to_vrep(c);
  const std::size_t dc = g.span_dim();
  CoverResult res;
  std::vector<int> relevant;
  for (int k : candidates) {
    const PolyCone& m = u.members[static_cast<std::size_t>(k)];
    bool inside = true;
    for (const auto& d : g.all_directions())
      if (!m.contains(d)) { inside = false; break; }
    if (inside) {
      res.status = CoverStatus::Covered;
      res.tree.member = k;
      return res;
    }
    if (cone_dim(c.intersect(m)) == dc) relevant.push_back(k);
  }
  if (relevant.empty()) {
    res.status = CoverStatus::NotCovered;
    res.witness = generic_witness(u, g);
    return res;
  }
  if (depth >= cap) {
    res.status = CoverStatus::Unknown;
    return res;
  }
  // Equality rows of a relevant member vanish on c, so some inequality row cuts c.
  const PolyCone& m = u.members[static_cast<std::size_t>(relevant.front())];
  RatVector cut;
  for (const auto& a : m.ge.row_list()) {
    for (const auto& d : g.all_directions())
      if (dot(a, d).sign() < 0) { cut = a; break; }
    if (!cut.empty()) break;
  }
  if (cut.empty()) throw std::logic_error("union_covers: no separating row found");
  PolyCone pos = c, neg = c;
  pos.add_ge(cut);
  neg.add_ge(Rational(-1) * cut);
  CoverResult rp = cover(u, relevant, pos, depth + 1, cap);
  if (rp.status == CoverStatus::NotCovered) return rp;
  CoverResult rn = cover(u, relevant, neg, depth + 1, cap);
  if (rn.status == CoverStatus::NotCovered) return rn;
  if (rp.status == CoverStatus::Unknown || rn.status == CoverStatus::Unknown) {
    res.status = CoverStatus::Unknown;
    return res;
  }
  res.status = CoverStatus::Covered;
  res.tree.split = cut;
  res.tree.children.push_back(std::move(rp.tree));
  res.tree.children.push_back(std::move(rn.tree));
  return res;
}

}  // namespace

CoverResult union_covers(const UnionCone& u, const PolyCone& c, int depth_cap) {
  if (u.dim != c.dim) throw std::invalid_argument("union_covers: dimension mismatch");
  if (u.members.empty()) {
    // An empty union does not even contain the origin.
    CoverResult r;
    r.status = CoverStatus::NotCovered;
    auto dirs = dd_hrep_to_vrep(c).all_directions();
    r.witness = dirs.empty() ? RatVector(c.dim) : primitive_direction(dirs.front());
    return r;
  }
  std::vector<int> all;
  for (std::size_t k = 0; k < u.members.size(); ++k) all.push_back(static_cast<int>(k));
  return cover(u, all, c, 0, depth_cap);
}

bool verify_cover_tree(const UnionCone& u, const PolyCone& c, const CoverTree& t) {
  if (t.children.empty()) {
    if (t.member < 0 || static_cast<std::size_t>(t.member) >= u.members.size()) return false;
    return cone_contains(u.members[static_cast<std::size_t>(t.member)], c);
  }
  if (t.children.size() != 2 || t.split.size() != c.dim) return false;
  PolyCone pos = c, neg = c;
  pos.add_ge(t.split);
  neg.add_ge(Rational(-1) * t.split);
  return verify_cover_tree(u, pos, t.children[0]) && verify_cover_tree(u, neg, t.children[1]);
}

CoverStatus union_contains_union(const UnionCone& outer, const UnionCone& inner, RatVector* witness) {
  bool unknown = false;
  for (const auto& m : inner.members) {
    CoverResult r = union_covers(outer, m);
    if (r.status == CoverStatus::NotCovered) {
      if (witness) *witness = r.witness;
      return CoverStatus::NotCovered;
    }
    if (r.status == CoverStatus::Unknown) unknown = true;
  }
  return unknown ? CoverStatus::Unknown : CoverStatus::Covered;
}

}  // namespace anfcq
