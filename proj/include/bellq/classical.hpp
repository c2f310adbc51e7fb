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

// Membership in the local (classical) polytope: the convex hull of the 4^N
// deterministic behaviors, decided by a phase-1 simplex.

#ifndef BELLQ_CLASSICAL_HPP_
#define BELLQ_CLASSICAL_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "bellq/scenario.hpp"

namespace bellq {

inline constexpr int kMaxVertexParties = 8;
inline constexpr double kLpFeasibilityTol = 1e-9;

/// The deterministic vertices of the local polytope, ordered by the per-party
/// strategy index (o(x=1) − 1)·2 + (o(x=2) − 1) with party 1 most significant.
/// Vertices are materialized on demand.
class VertexSet {
 public:
  explicit VertexSet(Scenario scenario);

  const Scenario& scenario() const { return scenario_; }
  std::size_t size() const { return std::size_t{1} << (2 * scenario_.parties()); }

  std::vector<LocalAssignment> strategy(std::size_t vertex) const;
  /// Linearized outcomes vector that vertex `vertex` produces for settings `x`.
  std::size_t outcomes(std::size_t vertex, std::size_t x) const;
  Behavior behavior(std::size_t vertex) const;
  /// bell_value(f, behavior(vertex)) without materializing the table.
  double value(const BellFunctional& f, std::size_t vertex) const;

 private:
  Scenario scenario_;
};

VertexSet enumerate_vertices(const Scenario& s);

struct LpCertificate {
  enum class Kind { kMember, kNonMember };
  Kind kind;
  std::map<std::size_t, double> weights;              // member only
  std::optional<BellFunctional> separating_functional;  // non-member only
  double slack;  // final phase-1 infeasibility

  bool member() const { return kind == Kind::kMember; }
};

/// Decides whether `b` is a convex mixture of deterministic behaviors. The
/// returned certificate has been verified: member weights reconstruct `b`
/// within 1e-8, a separating functional is ≥ −1e-12 on every vertex and below
/// −1e-9 on `b`. Throws LpError when no verifiable certificate is found.
LpCertificate is_classical(const Behavior& b);

struct ClassicalBound {
  double value;
  std::size_t vertex;  // lowest-index minimizer
};

/// Minimum of the functional over the local polytope, attained at a vertex.
ClassicalBound classical_bound(const BellFunctional& f);

/// Shifts the functional by a constant (spread over the settings vectors) so
/// that its classical minimum is exactly 0.
BellFunctional classical_bound_shift(const BellFunctional& f);

}  // namespace bellq

#endif  // BELLQ_CLASSICAL_HPP_
