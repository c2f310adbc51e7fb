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

// See-saw maximization of Bell violation: alternate between the optimal
// state for fixed measurements (a minimum eigenvector of the Bell operator)
// and the optimal measurements of one party for fixed state and other
// parties. Finds local optima only.

#ifndef BELLQ_SEESAW_HPP_
#define BELLQ_SEESAW_HPP_

#include <cstdint>
#include <vector>

#include "bellq/quantum.hpp"

namespace bellq {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct SeesawConfig {
  int restarts = 20;
  int max_rounds = 200;
  double convergence_tol = 1e-10;
  std::uint64_t seed = kDefaultSeed;
  std::vector<int> local_dims;  // empty: one qubit per party

  void validate(int n_parties) const;
};

struct SeesawResult {
  double best_value;
  QuantumStrategy best_strategy;
  std::vector<double> per_restart_values;
  std::vector<int> rounds_used;
  std::vector<bool> converged;
};

/// B = Σ_{x,a} β(a|x) ⊗_n A_n(a_n|x_n), so that tr[ρ B] = bell_value.
CMatrix bell_operator(const BellFunctional& f, const std::vector<LocalMeasurement>& measurements);

struct StateStep {
  CMatrix state;  // pure, minimum-eigenvalue eigenvector of B
  double value;
};

StateStep state_step(const BellFunctional& f, const std::vector<LocalMeasurement>& measurements);

/// Best measurement of `party` with everything else fixed. Qubits stay rank-1
/// (the projector onto the lower eigenvector of the effective operator; the
/// previous effects are kept when its spectrum is degenerate). Higher
/// dimensions take the projector onto the negative eigenspace.
LocalMeasurement measurement_step(const BellFunctional& f, const CMatrix& state,
                                  const std::vector<LocalMeasurement>& measurements, int party);

SeesawResult seesaw(const BellFunctional& f, const SeesawConfig& cfg);

}  // namespace bellq

#endif  // BELLQ_SEESAW_HPP_
