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

#include "anfcq/cq.hpp"
#include "anfcq/lp.hpp"
#include "anfcq/transforms.hpp"

namespace anfcq {

// Multipliers of either M-stationarity system. The counterpart form uses
// mu_u / mu_v; the abs-normal form uses mu_plus / mu_minus, which are derived
// from lambda rather than chosen freely.
struct MultiplierSet {
  RatVector lam_e;
  RatVector lam_i;
  RatVector lam_z;
  RatVector mu_u, mu_v;
  RatVector mu_plus, mu_minus;
};

enum class StationarityKind { MAnf, MMpcc, BAnf, BMpcc };
std::string to_string(StationarityKind k);

// One combination of sign cases over the degenerate indices. Codes per index:
//   counterpart: 'u' mu_u = 0, 'v' mu_v = 0, 'b' both > 0
//   abs-normal:  '+' mu_plus = 0, '-' mu_minus = 0, 'p' lam_z >= 0 and mu_plus > 0,
//                'n' lam_z <= 0 and mu_minus > 0
using CaseCode = std::string;

// Farkas certificate that one case combination has no multipliers.
struct CaseRefutation {
  CaseCode cases;
  RatVector dual_eq;
  RatVector dual_ge;
};

struct BranchStationarity {
  std::string label;
  bool stationary = false;
  RatVector gradient;
  // stationary: gradient = eq^T eq_mult + ge^T ge_mult with ge_mult >= 0 (dual membership)
  RatVector eq_mult;
  RatVector ge_mult;
  // not stationary: d in the branch linearized cone with gradient . d < 0
  RatVector descent;
};

struct StationarityVerdict {
  StationarityKind kind = StationarityKind::MAnf;
  Verdict status = Verdict::Unknown;
  std::string reason;
  // M-stationarity
  std::vector<std::size_t> degenerate;
  CaseCode cases;  // the feasible combination when Holds
  MultiplierSet multipliers;
  std::vector<CaseRefutation> refutations;  // every combination when Fails
  std::size_t cases_tried = 0;
  // B-stationarity
  std::vector<BranchStationarity> branches;
};

struct StationarityLimits {
  std::size_t max_degenerate = 10;  // at most 3^10 (counterpart) or 4^10 (abs-normal) LPs
  BranchLimits branches;
};

// The LP of one case combination. Variables: (lam_e, lam_i, lam_z, mu_u, mu_v)
// for the counterpart and (lam_e, lam_i, lam_z) for the abs-normal form.
LpProblem m_stationarity_lp_mpcc(const MpccProgram& mp, const MpccPoint& pt, const CaseCode& cases);
LpProblem m_stationarity_lp_anf(const AbsNormalProgram& p, const EvalResult& e, const CaseCode& cases);

StationarityVerdict check_m_stationary_mpcc(const MpccProgram& mp, const MpccPoint& pt,
                                            const StationarityLimits& limits = {});
StationarityVerdict check_m_stationary_anf(const AbsNormalProgram& p, const EvalResult& e,
                                           const StationarityLimits& limits = {});

// Direct substitution into the defining conditions. `why` names the first violation.
bool valid_m_multipliers_mpcc(const MpccProgram& mp, const MpccPoint& pt, const MultiplierSet& ms,
                              std::string* why = nullptr);
bool valid_m_multipliers_anf(const AbsNormalProgram& p, const EvalResult& e, const MultiplierSet& ms,
                             std::string* why = nullptr);

// Computes mu_plus / mu_minus from lambda at e.
MultiplierSet complete_anf_multipliers(const AbsNormalProgram& p, const EvalResult& e, MultiplierSet ms);

enum class TranslateDirection { AnfToMpcc, MpccToAnf };

class InvalidMultipliersError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// lambda is shared; mu_u = mu_plus and mu_v = mu_minus. Throws
// InvalidMultipliersError unless the input satisfies its own system.
MultiplierSet translate_multipliers(const AbsNormalProgram& p, const EvalResult& e, const MpccProgram& mp,
                                    const MpccPoint& pt, const MultiplierSet& ms, TranslateDirection dir);

// Stationarity of every branch problem over its linearized cone.
StationarityVerdict check_b_stationary_anf(const AbsNormalProgram& p, const EvalResult& e,
                                           const StationarityLimits& limits = {});
StationarityVerdict check_b_stationary_mpcc(const MpccProgram& mp, const MpccPoint& pt,
                                            const StationarityLimits& limits = {});
StationarityVerdict check_b_stationary(const std::vector<SmoothBranchProblem>& branches, StationarityKind kind);

// Re-checks the evidence of a branch entry against the branch problem.
bool valid_branch_stationarity(const SmoothBranchProblem& b, const BranchStationarity& s, std::string* why = nullptr);

}  // namespace anfcq
