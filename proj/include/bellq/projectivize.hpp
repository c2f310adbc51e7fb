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

// Convex decomposition of dichotomic POVMs into projective measurements by
// branching on each fractional eigenvalue of the outcome-1 effect.

#ifndef BELLQ_PROJECTIVIZE_HPP_
#define BELLQ_PROJECTIVIZE_HPP_

#include <vector>

#include "bellq/quantum.hpp"

namespace bellq {

inline constexpr double kEigenClampTol = 1e-10;
inline constexpr double kBranchPruneTol = 1e-12;
inline constexpr std::size_t kMaxStrategyTerms = 4096;

struct ProjectiveMixture {
  std::vector<double> weights;
  std::vector<EffectPair> measurements;

  std::size_t size() const { return weights.size(); }
};

/// Branches over the eigenvectors of A(1) in ascending eigenvalue order: each
/// eigenvector with eigenvalue λ strictly inside (0, 1) goes to outcome 1 with
/// weight λ or to outcome 2 with weight 1 − λ. The first eigenvector is the
/// slowest-varying index of the output and outcome 1 comes first.
ProjectiveMixture projectivize(const EffectPair& effects);

struct StrategyMixture {
  std::vector<double> weights;
  std::vector<QuantumStrategy> strategies;

  std::size_t size() const { return weights.size(); }
};

/// Product of the per-(party, setting) mixtures, party 1 setting 1 slowest.
/// Throws ResourceError above 4096 terms.
StrategyMixture projectivize_strategy(const QuantumStrategy& s);

Behavior mixture_behavior(const StrategyMixture& m);

}  // namespace bellq

#endif  // BELLQ_PROJECTIVIZE_HPP_
