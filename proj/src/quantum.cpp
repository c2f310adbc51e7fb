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

#include "bellq/quantum.hpp"

#include <random>
#include <sstream>

namespace bellq {

namespace {

void contract_party(const QuantumStrategy& s, const CMatrix& m, int party, std::size_t x,
                    std::size_t a, RVector& table) {
  const int n_parties = s.parties();
  if (party == n_parties) {
    table(static_cast<Eigen::Index>((x << n_parties) + a)) = m(0, 0).real();
    return;
  }
  const Eigen::Index d = s.dims[party];
  const Eigen::Index rest = m.rows() / d;
  for (int setting = 0; setting < 2; ++setting) {
    for (int outcome = 0; outcome < 2; ++outcome) {
      const CMatrix& effect = s.measurements[party](setting, outcome);
      // R[i', j'] = Σ_{i,j} A[j,i] M[(i,i'),(j,j')]
      CMatrix reduced = CMatrix::Zero(rest, rest);
      for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
          const auto c = effect(j, i);
          if (c == std::complex<double>(0)) continue;
          reduced += c * m.block(i * rest, j * rest, rest, rest);
        }
      }
      contract_party(s, reduced, party + 1, (x << 1) | setting, (a << 1) | outcome, table);
    }
  }
}

}  // namespace

LocalMeasurement LocalMeasurement::projective(const CMatrix& first, const CMatrix& second) {
  return from_outcome_one(first, second);
}

LocalMeasurement LocalMeasurement::from_outcome_one(const CMatrix& first, const CMatrix& second) {
  if (first.rows() != second.rows()) throw StructuralError("settings act on different dimensions");
  const auto d = first.rows();
  const CMatrix id = CMatrix::Identity(d, d);
  LocalMeasurement m;
  m.dim = static_cast<int>(d);
  m.effects[0] = {first, id - first};
  m.effects[1] = {second, id - second};
  return m;
}

void validate_effects(const EffectPair& pair, const std::string& where, int dim) {
  for (int a = 0; a < 2; ++a) {
    const CMatrix& e = pair[a];
    std::ostringstream os;
    if (e.rows() != dim || e.cols() != dim) {
      os << where << ", outcome " << a + 1 << ": effect is " << e.rows() << "x" << e.cols()
         << ", expected " << dim << "x" << dim;
      throw StructuralError(os.str());
    }
    if (!e.allFinite()) {
      os << where << ", outcome " << a + 1 << ": effect has non-finite entries";
      throw ValidationError(os.str());
    }
    const double herm = hermitian_residual(e);
    if (herm > kHermitianTol) {
      os << where << ", outcome " << a + 1 << ": effect not Hermitian (residual " << herm << ")";
      throw ValidationError(os.str());
    }
    const double low = min_eigenvalue(e);
    if (low < -kPsdTol) {
      os << where << ", outcome " << a + 1 << ": effect not positive (min eigenvalue " << low << ")";
      throw ValidationError(os.str());
    }
  }
  const double id_res = max_abs(pair[0] + pair[1] - CMatrix::Identity(dim, dim));
  if (id_res > kIdentityTol) {
    std::ostringstream os;
    os << where << ": effects do not sum to the identity (residual " << id_res << ")";
    throw ValidationError(os.str());
  }
}

void validate(const LocalMeasurement& m, const std::string& where) {
  if (m.dim < 1) throw StructuralError(where + ": local dimension must be positive");
  for (int x = 0; x < 2; ++x) {
    std::ostringstream os;
    os << where << ", setting " << x + 1;
    validate_effects(m.effects[x], os.str(), m.dim);
  }
}

bool is_density_matrix(const CMatrix& rho, double tol) {
  if (rho.rows() != rho.cols() || !rho.allFinite()) return false;
  if (hermitian_residual(rho) > tol) return false;
  if (std::abs(rho.trace() - 1.0) > tol) return false;
  return min_eigenvalue(rho) >= -tol;
}

void validate(const QuantumStrategy& s) {
  if (s.dims.empty()) throw StructuralError("strategy has no parties");
  for (int d : s.dims) {
    if (d < 1) throw StructuralError("local dimensions must be positive");
  }
  const std::size_t total = s.total_dim();
  if (total > kMaxTotalDim) {
    std::ostringstream os;
    os << "total dimension " << total << " exceeds the limit " << kMaxTotalDim;
    throw ResourceError(os.str());
  }
  if (s.measurements.size() != s.dims.size()) {
    throw StructuralError("strategy needs one measurement per party");
  }
  const auto td = static_cast<Eigen::Index>(total);
  if (s.state.rows() != td || s.state.cols() != td) {
    std::ostringstream os;
    os << "state is " << s.state.rows() << "x" << s.state.cols() << ", expected " << td << "x" << td;
    throw StructuralError(os.str());
  }
  if (!s.state.allFinite()) throw ValidationError("state has non-finite entries");
  const double herm = hermitian_residual(s.state);
  if (herm > kHermitianTol) {
    std::ostringstream os;
    os << "state not Hermitian (residual " << herm << ")";
    throw ValidationError(os.str());
  }
  const double trace_err = std::abs(s.state.trace() - 1.0);
  if (trace_err > kTraceTol) {
    std::ostringstream os;
    os << "state trace differs from 1 by " << trace_err;
    throw ValidationError(os.str());
  }
  const double low = min_eigenvalue(s.state);
  if (low < -kPsdTol) {
    std::ostringstream os;
    os << "state not positive (min eigenvalue " << low << ")";
    throw ValidationError(os.str());
  }
  for (int n = 0; n < s.parties(); ++n) {
    std::ostringstream os;
    os << "party " << n + 1;
    if (s.measurements[n].dim != s.dims[n]) {
      throw StructuralError(os.str() + ": measurement dimension does not match dims");
    }
    validate(s.measurements[n], os.str());
  }
}

bool ProjectiveFlag::all() const {
  for (const auto& party : flags)
    for (const auto& setting : party)
      for (bool f : setting)
        if (!f) return false;
  return true;
}

bool is_projective(const LocalMeasurement& m, double tol) {
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a)
      if (idempotence_residual(m(x, a)) > tol) return false;
  return true;
}

ProjectiveFlag check_projective(const QuantumStrategy& s) {
  ProjectiveFlag out;
  out.flags.resize(s.measurements.size());
  for (std::size_t n = 0; n < s.measurements.size(); ++n) {
    for (int x = 0; x < 2; ++x)
      for (int a = 0; a < 2; ++a)
        out.flags[n][x][a] = idempotence_residual(s.measurements[n](x, a)) <= kProjectorTol;
  }
  return out;
}

Behavior born_behavior_kron(const QuantumStrategy& s) {
  const Scenario sc = s.scenario();
  const int n_parties = s.parties();
  Behavior b = Behavior::zero(sc);
  const CMatrix rho_t = s.state.transpose();
  for (std::size_t x = 0; x < sc.joint_count(); ++x) {
    for (std::size_t a = 0; a < sc.joint_count(); ++a) {
      CMatrix op = s.measurements[0](sc.bit(x, 0), sc.bit(a, 0));
      for (int n = 1; n < n_parties; ++n) op = kron(op, s.measurements[n](sc.bit(x, n), sc.bit(a, n)));
      // tr[ρ O] = Σ ρᵀ ∘ O
      b.table()(sc.entry(x, a)) = (rho_t.array() * op.array()).sum().real();
    }
  }
  return b;
}

Behavior born_behavior_contracted(const QuantumStrategy& s) {
  const Scenario sc = s.scenario();
  RVector table = RVector::Zero(sc.table_size());
  contract_party(s, s.state, 0, 0, 0, table);
  return Behavior(sc, table);
}

Behavior born_behavior_unchecked(const QuantumStrategy& s) {
  return s.total_dim() <= kKronPathMaxDim ? born_behavior_kron(s) : born_behavior_contracted(s);
}

Behavior born_behavior(const QuantumStrategy& s) {
  validate(s);
  return born_behavior_unchecked(s);
}

QuantumStrategy random_strategy(const std::vector<int>& dims, bool pure, bool projective,
                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  QuantumStrategy s;
  s.dims = dims;
  for (int d : dims) {
    if (d < 1) throw StructuralError("local dimensions must be positive");
  }
  const auto total = static_cast<Eigen::Index>(product(dims));
  if (static_cast<std::size_t>(total) > kMaxTotalDim) throw ResourceError("total dimension too large");

  if (pure) {
    CVector psi = random_unit_vector<double>(total, rng);
    s.state = psi * psi.adjoint();
  } else {
    std::normal_distribution<double> normal(0, 1);
    CMatrix g(total, total);
    for (Eigen::Index j = 0; j < total; ++j)
      for (Eigen::Index i = 0; i < total; ++i) g(i, j) = {normal(rng), normal(rng)};
    s.state = g * g.adjoint();
    s.state /= s.state.trace().real();
  }
  s.state = (s.state + s.state.adjoint()) / 2.0;

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int d : dims) {
    std::array<CMatrix, 2> outcome_one;
    for (int x = 0; x < 2; ++x) {
      CMatrix u = random_unitary<double>(d, rng);
      if (projective) {
        const int rank = d / 2;
        outcome_one[x] = u.leftCols(rank) * u.leftCols(rank).adjoint();
      } else {
        RVector lambda(d);
        for (int k = 0; k < d; ++k) lambda(k) = unit(rng);
        outcome_one[x] = u * lambda.cast<std::complex<double>>().asDiagonal() * u.adjoint();
      }
      outcome_one[x] = (outcome_one[x] + outcome_one[x].adjoint()) / 2.0;
    }
    s.measurements.push_back(LocalMeasurement::from_outcome_one(outcome_one[0], outcome_one[1]));
  }
  return s;
}

}  // namespace bellq
