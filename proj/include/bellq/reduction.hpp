// Copyright 2026 The bellq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Removal of vectors shared between effect ranges of different settings,
// splitting the behavior into factorizable terms and a reduced strategy in
// which the four effect ranges of each party pairwise intersect trivially.

#ifndef BELLQ_REDUCTION_HPP_
#define BELLQ_REDUCTION_HPP_

#include <array>
#include <optional>
#include <vector>

#include "bellq/quantum.hpp"

namespace bellq {

inline constexpr double kSharedSingularTol = 1e-8;
inline constexpr double kWitnessTol = 1e-7;
inline constexpr double kFullyFactorizedTol = 1e-12;

struct RangeOverlap {
  int outcome_setting_one;  // 0-based outcome for setting 1
  int outcome_setting_two;  // 0-based outcome for setting 2
  int overlap_dimension;
  std::optional<CVector> witness;
};

/// Pairs in the fixed order {(1,1),(1,2)}, {(1,1),(2,2)}, {(2,1),(1,2)},
/// {(2,1),(2,2)} where (a,x) denotes range A(a|x).
using PartyOverlaps = std::array<RangeOverlap, 4>;

struct RangeOverlapReport {
  std::vector<PartyOverlaps> parties;

  bool all_zero() const;
};

/// Dimension of range P ∩ range Q: the number of principal cosines between
/// the two ranges that are 1 within 1e-8, with one unit witness if positive.
RangeOverlap range_intersection(const CMatrix& p, const CMatrix& q);
PartyOverlaps party_range_overlaps(const LocalMeasurement& m);
/// Requires projective measurements (PreconditionError otherwise).
RangeOverlapReport range_overlaps(const QuantumStrategy& s);

struct ReductionStep {
  int party;
  CVector removed_vector;     // in the party's original coordinates
  double factor_weight;       // π = tr[|v⟩⟨v| ρ] for the pre-step state
  double absolute_weight;     // weight of the factor term in the full mixture
  LocalAssignment factor_outcomes;         // 1-based outcome per setting
  std::optional<Behavior> factor_behavior;  // absent when π = 0
  std::optional<QuantumStrategy> reduced_strategy;  // absent when π = 1
};

struct ReductionResult {
  int parties = 0;
  std::optional<QuantumStrategy> reduced;
  std::vector<ReductionStep> steps;
  double residual_weight = 1.0;
  std::optional<int> factorized_party;  // set when a step had π = 1
  std::vector<CMatrix> isometries;       // per party, original × reduced

  /// Σ absolute_weight · factor + residual_weight · born(reduced).
  Behavior reconstruct() const;
};

ReductionResult strip_shared_vectors(const QuantumStrategy& s);

struct RankBalance {
  int dim;
  std::array<std::array<int, 2>, 2> ranks;  // [setting][outcome]
  bool balanced;
};

/// Requires zero range overlaps (PreconditionError otherwise).
std::vector<RankBalance> check_rank_balance(const QuantumStrategy& s);

/// Behavior of a factor term: party `party` answers `outcomes` deterministically
/// and the remaining parties measure `rest_state` with their measurements.
Behavior factorized_behavior(const QuantumStrategy& s, int party, const LocalAssignment& outcomes,
                             const CMatrix& rest_state);

}  // namespace bellq

#endif  // BELLQ_REDUCTION_HPP_
