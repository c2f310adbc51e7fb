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

// Scenario, behaviors, full-correlation functions and Bell functionals for N
// parties with two dichotomic settings each.
//
// Conventions used throughout the library:
//  * settings and outcomes are labeled 1 and 2;
//  * a settings vector x (or outcomes vector a) is linearized with party 1 as
//    the most significant binary digit: index(v) = Σ_n (v_n − 1)·2^(N−n);
//  * a table over (x, a) is flattened as index(x)·2^N + index(a);
//  * outcome a carries the spin value (−1)^a, so a = 1 → −1 and a = 2 → +1;
//  * Bell functionals are homogeneous with "classical ⇒ value ≥ 0"; a
//    negative value is a violation.

#ifndef BELLQ_SCENARIO_HPP_
#define BELLQ_SCENARIO_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bellq/linalg.hpp"

namespace bellq {

inline constexpr double kProbabilityTol = 1e-12;
inline constexpr double kNormalizationTol = 1e-9;

class Scenario {
 public:
  explicit Scenario(int n_parties);

  int parties() const { return n_; }
  /// Number of settings vectors (equal to the number of outcome vectors), 2^N.
  std::size_t joint_count() const { return std::size_t{1} << n_; }
  /// Number of (x, a) entries, 4^N.
  std::size_t table_size() const { return joint_count() * joint_count(); }

  std::size_t entry(std::size_t x, std::size_t a) const { return x * joint_count() + a; }

  /// 0-based bit of party `n` inside a linearized settings/outcomes index.
  int bit(std::size_t index, int n) const { return static_cast<int>((index >> (n_ - 1 - n)) & 1U); }

  friend bool operator==(const Scenario&, const Scenario&) = default;

 private:
  int n_;
};

/// index(v) for a vector of 1-based labels.
std::size_t linear_index(std::span<const int> labels);
/// Inverse of linear_index for N parties, returning 1-based labels.
std::vector<int> labels_of(std::size_t index, int n_parties);
/// Product of spin values (−1)^{Σ a_n} for a linearized outcomes index.
double parity_sign(std::size_t outcome_index, int n_parties);
std::string format_labels(std::size_t index, int n_parties);

class Behavior {
 public:
  Behavior(Scenario scenario, RVector table);

  static Behavior uniform(Scenario scenario);
  static Behavior zero(Scenario scenario);

  const Scenario& scenario() const { return scenario_; }
  const RVector& table() const { return table_; }
  RVector& table() { return table_; }
  double operator()(std::size_t x, std::size_t a) const { return table_(scenario_.entry(x, a)); }

 private:
  Scenario scenario_;
  RVector table_;
};

/// λ·first + (1 − λ)·second.
Behavior mix(const Behavior& first, const Behavior& second, double lambda);
double max_residual(const Behavior& first, const Behavior& second);

struct FullCorrelation {
  Scenario scenario;
  RVector values;  // indexed by linearized settings vector
};

class BellFunctional {
 public:
  BellFunctional(Scenario scenario, RVector coefficients);

  static BellFunctional zero(Scenario scenario);

  const Scenario& scenario() const { return scenario_; }
  const RVector& coefficients() const { return coefficients_; }
  double operator()(std::size_t x, std::size_t a) const {
    return coefficients_(scenario_.entry(x, a));
  }

 private:
  Scenario scenario_;
  RVector coefficients_;
};

struct Violation {
  enum class Kind { kRange, kNormalization };
  Kind kind;
  std::size_t settings;
  std::optional<std::size_t> outcomes;  // set for range violations
  double residual;

  std::string describe(int n_parties) const;
};

using ValidationReport = std::vector<Violation>;

ValidationReport validate_behavior(const Behavior& b);
/// Throws ValidationError citing the first violation, if any.
void require_valid(const Behavior& b);

FullCorrelation correlators(const Behavior& b);

/// Σ_{x,a} β(a|x) P(a|x); negative means the functional is violated.
double bell_value(const BellFunctional& f, const Behavior& b);

/// Per-party deterministic assignment: outcomes[n][x − 1] is the outcome of
/// party n for setting x.
using LocalAssignment = std::array<int, 2>;

Behavior deterministic_behavior(const Scenario& s, std::span<const LocalAssignment> strategy);

/// β(a|x) = w(x)·(−1)^{Σ a_n}, so that bell_value = Σ_x w(x) C(x).
BellFunctional correlator_functional(const Scenario& s, const RVector& weights);

enum class BoundSense {
  kAtMost,   // classical: f(P) ≤ bound
  kAtLeast,  // classical: f(P) ≥ bound
};

/// Converts a textbook inequality into the homogeneous "≥ 0" form by spreading
/// the constant bound uniformly over all settings vectors (each outcome row
/// sums to one, so the constant is recovered exactly on normalized behaviors).
BellFunctional homogenize(const BellFunctional& f, double bound, BoundSense sense);

/// Two-party PR box: P(a,b|x,y) = 1/2 when (a−1) ⊕ (b−1) = (x−1)·(y−1).
Behavior pr_box();

/// C(1,1) + C(1,2) + C(2,1) − C(2,2).
BellFunctional chsh_correlator();
/// CHSH ≤ 2 in homogeneous form, i.e. 2 − (C11 + C12 + C21 − C22).
BellFunctional chsh();
/// C(1,1,2) + C(1,2,1) + C(2,1,1) − C(2,2,2).
BellFunctional mermin_correlator();

}  // namespace bellq

#endif  // BELLQ_SCENARIO_HPP_
