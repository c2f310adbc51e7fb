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

#include "bellq/seesaw.hpp"

#include <limits>
#include <sstream>

namespace bellq {

namespace {

std::vector<int> dims_of(const std::vector<LocalMeasurement>& ms) {
  std::vector<int> dims;
  for (const auto& m : ms) dims.push_back(m.dim);
  return dims;
}

// Σ over (x, a) with x_n = setting and a_n = outcome of β(a|x) ⊗_{m≠n} A_m.
CMatrix rest_operator(const BellFunctional& f, const std::vector<LocalMeasurement>& ms, int party,
                      int setting, int outcome) {
  const Scenario& sc = f.scenario();
  const int n_parties = sc.parties();
  std::size_t rest_dim = 1;
  for (int m = 0; m < n_parties; ++m)
    if (m != party) rest_dim *= static_cast<std::size_t>(ms[m].dim);
  const auto rd = static_cast<Eigen::Index>(rest_dim);
  CMatrix out = CMatrix::Zero(rd, rd);
  for (std::size_t x = 0; x < sc.joint_count(); ++x) {
    if (sc.bit(x, party) != setting) continue;
    for (std::size_t a = 0; a < sc.joint_count(); ++a) {
      if (sc.bit(a, party) != outcome) continue;
      const double beta = f(x, a);
      if (beta == 0.0) continue;
      CMatrix op = CMatrix::Identity(1, 1);
      for (int m = 0; m < n_parties; ++m) {
        if (m == party) continue;
        op = kron(op, ms[m](sc.bit(x, m), sc.bit(a, m)));
      }
      out += beta * op;
    }
  }
  return out;
}

double strategy_value(const BellFunctional& f, const CMatrix& state,
                      const std::vector<LocalMeasurement>& ms) {
  QuantumStrategy s{dims_of(ms), state, ms};
  return bell_value(f, born_behavior_unchecked(s));
}

}  // namespace

void SeesawConfig::validate(int n_parties) const {
  if (restarts < 1) throw ValidationError("restarts must be at least 1");
  if (max_rounds < 1) throw ValidationError("max_rounds must be at least 1");
  if (!(convergence_tol > 0.0)) throw ValidationError("convergence_tol must be positive");
  if (!local_dims.empty()) {
    if (static_cast<int>(local_dims.size()) != n_parties) {
      throw StructuralError("local_dims needs one entry per party");
    }
    for (int d : local_dims)
      if (d < 1) throw ValidationError("local dimensions must be positive");
  }
}

CMatrix bell_operator(const BellFunctional& f, const std::vector<LocalMeasurement>& ms) {
  const Scenario& sc = f.scenario();
  if (static_cast<int>(ms.size()) != sc.parties()) {
    throw StructuralError("bell_operator needs one measurement per party");
  }
  const auto total = static_cast<Eigen::Index>(product(dims_of(ms)));
  CMatrix b = CMatrix::Zero(total, total);
  for (std::size_t x = 0; x < sc.joint_count(); ++x) {
    for (std::size_t a = 0; a < sc.joint_count(); ++a) {
      const double beta = f(x, a);
      if (beta == 0.0) continue;
      CMatrix op = ms[0](sc.bit(x, 0), sc.bit(a, 0));
      for (int n = 1; n < sc.parties(); ++n) op = kron(op, ms[n](sc.bit(x, n), sc.bit(a, n)));
      b += beta * op;
    }
  }
  return (b + b.adjoint()) / 2.0;
}

StateStep state_step(const BellFunctional& f, const std::vector<LocalMeasurement>& ms) {
  const CMatrix b = bell_operator(f, ms);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(b);
  const CVector psi = es.eigenvectors().col(0);
  return {psi * psi.adjoint(), es.eigenvalues()(0)};
}

LocalMeasurement measurement_step(const BellFunctional& f, const CMatrix& state,
                                  const std::vector<LocalMeasurement>& ms, int party) {
  const std::vector<int> dims = dims_of(ms);
  const LocalMeasurement& previous = ms[party];
  const int d = previous.dim;
  std::array<CMatrix, 2> outcome_one;
  for (int x = 0; x < 2; ++x) {
    const CMatrix k1 = contract_complement(state, rest_operator(f, ms, party, x, 0), party, dims);
    const CMatrix k2 = contract_complement(state, rest_operator(f, ms, party, x, 1), party, dims);
    // value = tr[A(1|x) (K₁ − K₂)] + tr[K₂] + (terms without this setting)
    CMatrix delta = k1 - k2;
    delta = (delta + delta.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(delta);
    const RVector& ev = es.eigenvalues();
    if (d == 2) {
      const double gap = ev(1) - ev(0);
      if (gap <= 1e-12 * (1.0 + ev.cwiseAbs().maxCoeff())) {
        outcome_one[x] = previous(x, 0);
      } else {
        const CVector low = es.eigenvectors().col(0);
        outcome_one[x] = low * low.adjoint();
      }
    } else {
      CMatrix p = CMatrix::Zero(d, d);
      for (int k = 0; k < d; ++k) {
        if (ev(k) < 0.0) p += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
      }
      outcome_one[x] = p;
    }
  }
  return LocalMeasurement::projective(outcome_one[0], outcome_one[1]);
}

SeesawResult seesaw(const BellFunctional& f, const SeesawConfig& cfg) {
  const int n_parties = f.scenario().parties();
  cfg.validate(n_parties);
  const std::vector<int> dims =
      cfg.local_dims.empty() ? std::vector<int>(n_parties, 2) : cfg.local_dims;
  if (product(dims) > kMaxTotalDim) throw ResourceError("see-saw total dimension too large");

  SeesawResult result;
  result.best_value = std::numeric_limits<double>::infinity();
  for (int r = 0; r < cfg.restarts; ++r) {
    std::vector<LocalMeasurement> ms =
        random_strategy(dims, true, true, cfg.seed + static_cast<std::uint64_t>(r)).measurements;
    StateStep st = state_step(f, ms);
    double previous = st.value;
    int rounds = 0;
    bool converged = false;
    while (rounds < cfg.max_rounds) {
      ++rounds;
      for (int n = 0; n < n_parties; ++n) ms[n] = measurement_step(f, st.state, ms, n);
      st = state_step(f, ms);
      if (previous - st.value < cfg.convergence_tol) {
        converged = true;
        break;
      }
      previous = st.value;
    }
    const double value = strategy_value(f, st.state, ms);
    result.per_restart_values.push_back(value);
    result.rounds_used.push_back(rounds);
    result.converged.push_back(converged);
    if (value < result.best_value) {
      result.best_value = value;
      result.best_strategy = QuantumStrategy{dims, st.state, ms};
    }
  }
  return result;
}

}  // namespace bellq
