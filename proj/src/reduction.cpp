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

#include "bellq/reduction.hpp"

#include <sstream>

namespace bellq {

namespace {

constexpr std::array<std::array<int, 2>, 4> kPairOrder = {{{0, 0}, {0, 1}, {1, 0}, {1, 1}}};

void require_projective(const QuantumStrategy& s, const char* op) {
  for (int n = 0; n < s.parties(); ++n) {
    if (!is_projective(s.measurements[n])) {
      std::ostringstream os;
      os << op << ": party " << n + 1 << " has non-projective effects; projectivize first";
      throw PreconditionError(os.str());
    }
  }
}

CMatrix clean_projector(const CMatrix& a) {
  CMatrix basis = range_basis(a);
  return basis * basis.adjoint();
}

}  // namespace

bool RangeOverlapReport::all_zero() const {
  for (const auto& party : parties)
    for (const auto& pair : party)
      if (pair.overlap_dimension != 0) return false;
  return true;
}

RangeOverlap range_intersection(const CMatrix& p, const CMatrix& q) {
  RangeOverlap out{0, 0, 0, std::nullopt};
  const CMatrix up = range_basis(p);
  const CMatrix uq = range_basis(q);
  if (up.cols() == 0 || uq.cols() == 0) return out;
  const CMatrix cross = up.adjoint() * uq;
  Eigen::JacobiSVD<CMatrix> svd(cross, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVector& sigma = svd.singularValues();
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (sigma(k) >= 1.0 - kSharedSingularTol) ++out.overlap_dimension;
  }
  if (out.overlap_dimension > 0) {
    CVector v = uq * svd.matrixV().col(0);
    const CMatrix pp = up * up.adjoint();
    const CMatrix qq = uq * uq.adjoint();
    for (int it = 0; it < 4; ++it) {
      v = pp * (qq * v);
      v.normalize();
    }
    out.witness = v;
  }
  return out;
}

PartyOverlaps party_range_overlaps(const LocalMeasurement& m) {
  PartyOverlaps out;
  for (std::size_t k = 0; k < kPairOrder.size(); ++k) {
    const auto [a1, a2] = kPairOrder[k];
    out[k] = range_intersection(m(0, a1), m(1, a2));
    out[k].outcome_setting_one = a1;
    out[k].outcome_setting_two = a2;
  }
  return out;
}

RangeOverlapReport range_overlaps(const QuantumStrategy& s) {
  require_projective(s, "range_overlaps");
  RangeOverlapReport report;
  for (const auto& m : s.measurements) report.parties.push_back(party_range_overlaps(m));
  return report;
}

Behavior factorized_behavior(const QuantumStrategy& s, int party, const LocalAssignment& outcomes,
                             const CMatrix& rest_state) {
  const int n_parties = s.parties();
  const Scenario sc = s.scenario();
  RVector rest_table = RVector::Ones(1);
  if (n_parties > 1) {
    QuantumStrategy rest;
    rest.state = rest_state;
    for (int m = 0; m < n_parties; ++m) {
      if (m == party) continue;
      rest.dims.push_back(s.dims[m]);
      rest.measurements.push_back(s.measurements[m]);
    }
    rest_table = born_behavior_unchecked(rest).table();
  }
  const std::size_t rest_joint = sc.joint_count() >> 1;
  Behavior out = Behavior::zero(sc);
  const int shift = n_parties - 1 - party;
  const std::size_t low_mask = (std::size_t{1} << shift) - 1;
  auto drop_bit = [&](std::size_t v) { return ((v >> (shift + 1)) << shift) | (v & low_mask); };
  for (std::size_t x = 0; x < sc.joint_count(); ++x) {
    const int setting = sc.bit(x, party);
    for (std::size_t a = 0; a < sc.joint_count(); ++a) {
      if (sc.bit(a, party) != outcomes[setting] - 1) continue;
      out.table()(sc.entry(x, a)) = rest_table(drop_bit(x) * rest_joint + drop_bit(a));
    }
  }
  return out;
}

ReductionResult strip_shared_vectors(const QuantumStrategy& input) {
  validate(input);
  require_projective(input, "strip_shared_vectors");

  ReductionResult result;
  result.parties = input.parties();
  QuantumStrategy current = input;
  for (int d : input.dims) result.isometries.push_back(CMatrix::Identity(d, d));
  double running = 1.0;

  for (int n = 0; n < input.parties(); ++n) {
    for (;;) {
      PartyOverlaps overlaps = party_range_overlaps(current.measurements[n]);
      const RangeOverlap* shared = nullptr;
      for (const auto& pair : overlaps) {
        if (pair.overlap_dimension > 0) {
          shared = &pair;
          break;
        }
      }
      if (shared == nullptr) break;

      const CVector& v = *shared->witness;
      const CMatrix v_adj = v.adjoint();
      CMatrix rest = conjugate_local(current.state, v_adj, n, current.dims);
      const double pi = std::clamp(rest.trace().real(), 0.0, 1.0);

      ReductionStep step;
      step.party = n;
      step.removed_vector = result.isometries[n] * v;
      step.factor_weight = pi;
      step.absolute_weight = running * pi;
      step.factor_outcomes = {shared->outcome_setting_one + 1, shared->outcome_setting_two + 1};
      if (pi > 0.0) {
        CMatrix rest_state = rest / pi;
        rest_state = (rest_state + rest_state.adjoint()) / 2.0;
        step.factor_behavior = factorized_behavior(current, n, step.factor_outcomes, rest_state);
      }

      const CMatrix complement = orthogonal_complement(CMatrix(v));
      if (pi >= 1.0 - kFullyFactorizedTol || complement.cols() == 0) {
        // The remaining mass sits entirely in the factor term.
        step.absolute_weight = running;
        result.steps.push_back(std::move(step));
        result.factorized_party = n;
        result.residual_weight = 0.0;
        result.reduced.reset();
        return result;
      }

      const CMatrix complement_adj = complement.adjoint();
      CMatrix reduced_state = conjugate_local(current.state, complement_adj, n, current.dims);
      reduced_state = (reduced_state + reduced_state.adjoint()) / 2.0;
      reduced_state /= reduced_state.trace().real();

      LocalMeasurement m;
      m.dim = static_cast<int>(complement.cols());
      for (int x = 0; x < 2; ++x) {
        CMatrix one = clean_projector(complement_adj * current.measurements[n](x, 0) * complement);
        m.effects[x] = {one, CMatrix::Identity(m.dim, m.dim) - one};
      }
      current.state = std::move(reduced_state);
      current.dims[n] = m.dim;
      current.measurements[n] = std::move(m);
      result.isometries[n] = result.isometries[n] * complement;
      running *= 1.0 - pi;
      step.reduced_strategy = current;
      result.steps.push_back(std::move(step));
    }
  }
  result.reduced = std::move(current);
  result.residual_weight = running;
  return result;
}

Behavior ReductionResult::reconstruct() const {
  Scenario sc(parties);
  Behavior total = Behavior::zero(sc);
  for (const auto& step : steps) {
    if (step.factor_behavior) total.table() += step.absolute_weight * step.factor_behavior->table();
  }
  if (reduced && residual_weight > 0.0) {
    total.table() += residual_weight * born_behavior_unchecked(*reduced).table();
  }
  return total;
}

std::vector<RankBalance> check_rank_balance(const QuantumStrategy& s) {
  RangeOverlapReport overlaps = range_overlaps(s);
  if (!overlaps.all_zero()) {
    throw PreconditionError("check_rank_balance: effect ranges share vectors; run strip_shared_vectors first");
  }
  std::vector<RankBalance> out;
  for (const auto& m : s.measurements) {
    RankBalance rb{m.dim, {}, true};
    for (int x = 0; x < 2; ++x)
      for (int a = 0; a < 2; ++a) rb.ranks[x][a] = hermitian_rank(m(x, a));
    rb.balanced = (m.dim % 2 == 0);
    for (const auto& setting : rb.ranks)
      for (int r : setting) rb.balanced = rb.balanced && (2 * r == m.dim);
    out.push_back(rb);
  }
  return out;
}

}  // namespace bellq
