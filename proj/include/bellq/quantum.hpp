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

// Quantum strategies: a density matrix on ⊗_n C^{d_n} plus, per party and
// setting, a dichotomic POVM. Their Born-rule behavior is
// P(a|x) = tr[ρ ⊗_n A_n(a_n|x_n)].
//
// In the C++ API settings and outcomes are 0-based: effects[x][a] holds the
// effect for setting label x + 1 and outcome label a + 1.

#ifndef BELLQ_QUANTUM_HPP_
#define BELLQ_QUANTUM_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bellq/scenario.hpp"

namespace bellq {

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kIdentityTol = 1e-9;
inline constexpr double kProjectorTol = 1e-8;
inline constexpr std::size_t kMaxTotalDim = 1024;
inline constexpr std::size_t kKronPathMaxDim = 64;

using EffectPair = std::array<CMatrix, 2>;

struct LocalMeasurement {
  int dim = 0;
  std::array<EffectPair, 2> effects;  // [setting][outcome]

  const CMatrix& operator()(int setting, int outcome) const { return effects[setting][outcome]; }

  /// Projective measurement with outcome-1 projectors `first` and `second`
  /// for the two settings; the outcome-2 effects are the complements.
  static LocalMeasurement projective(const CMatrix& first, const CMatrix& second);
  /// Same construction; the outcome-1 effects need not be projectors.
  static LocalMeasurement from_outcome_one(const CMatrix& first, const CMatrix& second);
};

struct QuantumStrategy {
  std::vector<int> dims;
  CMatrix state;
  std::vector<LocalMeasurement> measurements;

  int parties() const { return static_cast<int>(dims.size()); }
  Scenario scenario() const { return Scenario(parties()); }
  std::size_t total_dim() const { return product(dims); }
};

/// Throws ValidationError naming the offending effect.
void validate_effects(const EffectPair& pair, const std::string& where, int dim);
void validate(const LocalMeasurement& m, const std::string& where = "measurement");
void validate(const QuantumStrategy& s);
bool is_density_matrix(const CMatrix& rho, double tol);

struct ProjectiveFlag {
  std::vector<std::array<std::array<bool, 2>, 2>> flags;  // [party][setting][outcome]

  bool all() const;
};

ProjectiveFlag check_projective(const QuantumStrategy& s);
bool is_projective(const LocalMeasurement& m, double tol = kProjectorTol);

/// Validates the strategy and returns its Born-rule behavior.
Behavior born_behavior(const QuantumStrategy& s);
/// No validation. Uses the Kronecker path up to 64 total dimensions and
/// iterated partial contraction above.
Behavior born_behavior_unchecked(const QuantumStrategy& s);
Behavior born_behavior_kron(const QuantumStrategy& s);
Behavior born_behavior_contracted(const QuantumStrategy& s);

/// Deterministic given `seed`. Pure states are Haar random; mixed states are
/// normalized Wishart (full rank). Projective measurements are rank ⌊d/2⌋
/// projectors in a Haar-random basis; otherwise A(1|x) = U diag(λ) U† with λ
/// uniform in [0, 1].
QuantumStrategy random_strategy(const std::vector<int>& dims, bool pure, bool projective,
                                std::uint64_t seed);

}  // namespace bellq

#endif  // BELLQ_QUANTUM_HPP_
