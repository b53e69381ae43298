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

#include "anfcq/polycone.hpp"

#include <algorithm>
#include <stdexcept>

namespace anfcq {

PolyCone::PolyCone(RatMatrix e, RatMatrix g) : dim(e.cols()), eq(std::move(e)), ge(std::move(g)) {
  if (ge.cols() != dim) throw std::invalid_argument("PolyCone: row blocks differ in dimension");
}

bool PolyCone::contains(const RatVector& d) const {
  if (d.size() != dim) throw std::invalid_argument("PolyCone::contains: dimension mismatch");
  for (std::size_t i = 0; i < eq.rows(); ++i)
    if (!dot(eq.row(i), d).is_zero()) return false;
  for (std::size_t i = 0; i < ge.rows(); ++i)
    if (dot(ge.row(i), d).sign() < 0) return false;
  return true;
}

PolyCone PolyCone::intersect(const PolyCone& other) const {
  if (other.dim != dim) throw std::invalid_argument("PolyCone::intersect: dimension mismatch");
  PolyCone r(*this);
  r.eq.append_rows(other.eq);
  r.ge.append_rows(other.ge);
  return r;
}

std::vector<RatVector> ConeGenerators::all_directions() const {
  std::vector<RatVector> out = rays;
  for (const auto& l : lineality) {
    out.push_back(l);
    out.push_back(Rational(-1) * l);
  }
  return out;
}

std::size_t ConeGenerators::span_dim() const {
  std::vector<RatVector> v = rays;
  v.insert(v.end(), lineality.begin(), lineality.end());
  return rank(v, dim);
}

namespace {

struct DdRay {
  RatVector v;
  std::vector<bool> tight;  // processed rows with a.v == 0
};

bool tight_superset(const std::vector<bool>& big, const std::vector<bool>& small) {
  for (std::size_t i = 0; i < small.size(); ++i)
    if (small[i] && !big[i]) return false;
  return true;
}

void dedupe(std::vector<RatVector>& rays) {
  for (auto& r : rays) r = primitive_direction(r);
  std::sort(rays.begin(), rays.end());
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
}

}  // namespace

ConeGenerators dd_hrep_to_vrep(const PolyCone& c) {
  const std::size_t n = c.dim;
  ConeGenerators out;
  out.dim = n;

  // Restrict to the solution space of the equality rows: d = N y.
  std::vector<RatVector> basis =
      c.eq.rows() ? nullspace(c.eq) : RatMatrix::identity(n).row_list();
  const std::size_t k = basis.size();
  if (k == 0) return out;
  RatMatrix N(n, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i) N(i, j) = basis[j][i];

  std::vector<RatVector> rows;
  for (std::size_t i = 0; i < c.ge.rows(); ++i) {
    RatVector a = N.transpose() * c.ge.row(i);
    if (!is_zero(a)) rows.push_back(primitive_direction(a));
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

  std::vector<RatVector> lin = RatMatrix::identity(k).row_list();
  std::vector<DdRay> rays;
  for (std::size_t ri = 0; ri < rows.size(); ++ri) {
    const RatVector& a = rows[ri];
    // Case 1: the row cuts the lineality space.
    std::size_t pick = lin.size();
    for (std::size_t j = 0; j < lin.size(); ++j)
      if (!dot(a, lin[j]).is_zero()) { pick = j; break; }
    if (pick < lin.size()) {
      RatVector l0 = lin[pick];
      Rational al0 = dot(a, l0);
      if (al0.sign() < 0) { l0 = Rational(-1) * l0; al0 = -al0; }
      std::vector<RatVector> new_lin;
      for (std::size_t j = 0; j < lin.size(); ++j) {
        if (j == pick) continue;
        new_lin.push_back(lin[j] - (dot(a, lin[j]) / al0) * l0);
      }
      for (auto& r : rays) {
        r.v = primitive_direction(r.v - (dot(a, r.v) / al0) * l0);
        r.tight.push_back(true);
      }
      DdRay nr{primitive_direction(l0), std::vector<bool>(ri + 1, true)};
      nr.tight[ri] = false;
      rays.push_back(std::move(nr));
      lin = std::move(new_lin);
      continue;
    }
    // Case 2: the row vanishes on the lineality space; combine adjacent rays.
    std::vector<std::size_t> pos, zero, neg;
    std::vector<Rational> val(rays.size());
    for (std::size_t j = 0; j < rays.size(); ++j) {
      val[j] = dot(a, rays[j].v);
      (val[j].sign() > 0 ? pos : val[j].sign() < 0 ? neg : zero).push_back(j);
    }
    std::vector<DdRay> next;
    for (auto j : pos) {
      next.push_back(rays[j]);
      next.back().tight.push_back(false);
    }
    for (auto j : zero) {
      next.push_back(rays[j]);
      next.back().tight.push_back(true);
    }
    for (auto p : pos)
      for (auto q : neg) {
        std::vector<bool> common(ri, false);
        for (std::size_t t = 0; t < ri; ++t) common[t] = rays[p].tight[t] && rays[q].tight[t];
        bool adjacent = true;
        for (std::size_t o = 0; o < rays.size() && adjacent; ++o)
          if (o != p && o != q && tight_superset(rays[o].tight, common)) adjacent = false;
        if (!adjacent) continue;
        RatVector v = val[p] * rays[q].v - val[q] * rays[p].v;
        common.push_back(true);
        next.push_back({primitive_direction(v), std::move(common)});
      }
    rays = std::move(next);
  }

  for (const auto& r : rays) out.rays.push_back(N * r.v);
  dedupe(out.rays);
  if (!lin.empty()) {
    std::vector<RatVector> lv;
    for (const auto& l : lin) lv.push_back(N * l);
    RatMatrix e = rref(RatMatrix::from_rows(lv, n));
    for (std::size_t i = 0; i < e.rows(); ++i) out.lineality.push_back(primitive_direction(e.row(i)));
  }
  return out;
}

PolyCone dd_vrep_to_hrep(const ConeGenerators& g) {
  // The dual {w : w.r >= 0, w.l = 0} has generators (R*, L*), and the cone is
  // {d : d.r* >= 0, d.l* = 0}.
  PolyCone dual(g.dim);
  for (const auto& r : g.rays) dual.add_ge(r);
  for (const auto& l : g.lineality) dual.add_eq(l);
  ConeGenerators dg = dd_hrep_to_vrep(dual);
  PolyCone out(g.dim);
  for (const auto& l : dg.lineality) out.add_eq(l);
  for (const auto& r : dg.rays) out.add_ge(r);
  return out;
}

std::size_t cone_dim(const PolyCone& c) { return dd_hrep_to_vrep(c).span_dim(); }

}  // namespace anfcq
