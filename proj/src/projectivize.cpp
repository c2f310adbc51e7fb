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

#include "bellq/projectivize.hpp"

#include <sstream>

namespace bellq {

ProjectiveMixture projectivize(const EffectPair& effects) {
  const int d = static_cast<int>(effects[0].rows());
  validate_effects(effects, "POVM", d);

  const CMatrix a1 = (effects[0] + effects[0].adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a1);
  RVector lambda = es.eigenvalues();
  const CMatrix& vecs = es.eigenvectors();

  CMatrix fixed_one = CMatrix::Zero(d, d);
  std::vector<int> fractional;
  for (int k = 0; k < d; ++k) {
    double& l = lambda(k);
    if (l < -kEigenClampTol || l > 1.0 + kEigenClampTol) {
      std::ostringstream os;
      os << "POVM eigenvalue " << l << " outside [0, 1]";
      throw ValidationError(os.str());
    }
    if (l <= kEigenClampTol) {
      l = 0.0;
    } else if (l >= 1.0 - kEigenClampTol) {
      l = 1.0;
      fixed_one += vecs.col(k) * vecs.col(k).adjoint();
    } else {
      fractional.push_back(k);
    }
  }
  if (fractional.size() > 20) throw ResourceError("too many fractional eigenvalues to branch");

  const CMatrix id = CMatrix::Identity(d, d);
  const std::size_t branches = std::size_t{1} << fractional.size();
  const std::size_t f = fractional.size();
  ProjectiveMixture out;
  double total = 0.0;
  for (std::size_t mask = 0; mask < branches; ++mask) {
    double weight = 1.0;
    CMatrix one = fixed_one;
    for (std::size_t j = 0; j < f; ++j) {
      const int k = fractional[j];
      const bool to_outcome_two = (mask >> (f - 1 - j)) & 1U;
      if (to_outcome_two) {
        weight *= 1.0 - lambda(k);
      } else {
        weight *= lambda(k);
        one += vecs.col(k) * vecs.col(k).adjoint();
      }
    }
    if (weight < kBranchPruneTol) continue;
    total += weight;
    out.weights.push_back(weight);
    out.measurements.push_back({one, id - one});
  }
  for (double& w : out.weights) w /= total;
  return out;
}

StrategyMixture projectivize_strategy(const QuantumStrategy& s) {
  validate(s);
  // One mixture per (party, setting), party-major.
  std::vector<ProjectiveMixture> parts;
  std::size_t terms = 1;
  for (const auto& m : s.measurements) {
    for (int x = 0; x < 2; ++x) {
      parts.push_back(projectivize(m.effects[x]));
      terms *= parts.back().size();
      if (terms > kMaxStrategyTerms) {
        std::ostringstream os;
        os << "projective mixture exceeds " << kMaxStrategyTerms << " terms";
        throw ResourceError(os.str());
      }
    }
  }

  StrategyMixture out;
  std::vector<std::size_t> choice(parts.size(), 0);
  for (std::size_t t = 0; t < terms; ++t) {
    std::size_t rem = t;
    for (std::size_t p = parts.size(); p-- > 0;) {
      choice[p] = rem % parts[p].size();
      rem /= parts[p].size();
    }
    QuantumStrategy term;
    term.dims = s.dims;
    term.state = s.state;
    double weight = 1.0;
    for (int n = 0; n < s.parties(); ++n) {
      LocalMeasurement m;
      m.dim = s.dims[n];
      for (int x = 0; x < 2; ++x) {
        const auto& part = parts[2 * n + x];
        weight *= part.weights[choice[2 * n + x]];
        m.effects[x] = part.measurements[choice[2 * n + x]];
      }
      term.measurements.push_back(std::move(m));
    }
    out.weights.push_back(weight);
    out.strategies.push_back(std::move(term));
  }
  return out;
}

Behavior mixture_behavior(const StrategyMixture& m) {
  if (m.strategies.empty()) throw StructuralError("empty mixture");
  Behavior total = Behavior::zero(m.strategies.front().scenario());
  for (std::size_t j = 0; j < m.size(); ++j) {
    total.table() += m.weights[j] * born_behavior_unchecked(m.strategies[j]).table();
  }
  return total;
}

}  // namespace bellq
