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

#include "bellq/scenario.hpp"

#include <bit>
#include <cmath>
#include <sstream>

namespace bellq {

Scenario::Scenario(int n_parties) : n_(n_parties) {
  if (n_parties < 1) throw StructuralError("scenario needs at least one party");
  if (n_parties > 15) throw ResourceError("scenario with more than 15 parties is not representable");
}

std::size_t linear_index(std::span<const int> labels) {
  std::size_t index = 0;
  for (int label : labels) {
    if (label != 1 && label != 2) throw StructuralError("labels must be 1 or 2");
    index = (index << 1) | static_cast<std::size_t>(label - 1);
  }
  return index;
}

std::vector<int> labels_of(std::size_t index, int n_parties) {
  std::vector<int> labels(n_parties);
  for (int n = 0; n < n_parties; ++n) {
    labels[n] = static_cast<int>((index >> (n_parties - 1 - n)) & 1U) + 1;
  }
  return labels;
}

double parity_sign(std::size_t outcome_index, int n_parties) {
  // (−1)^{Σ a_n} with a_n = bit_n + 1.
  const int flips = std::popcount(outcome_index) + n_parties;
  return (flips % 2 == 0) ? 1.0 : -1.0;
}

std::string format_labels(std::size_t index, int n_parties) {
  std::ostringstream os;
  os << '(';
  auto labels = labels_of(index, n_parties);
  for (std::size_t k = 0; k < labels.size(); ++k) os << (k ? "," : "") << labels[k];
  os << ')';
  return os.str();
}

Behavior::Behavior(Scenario scenario, RVector table)
    : scenario_(scenario), table_(std::move(table)) {
  const auto expected = static_cast<Eigen::Index>(scenario_.table_size());
  if (table_.size() != expected) {
    std::ostringstream os;
    os << "behavior table has " << table_.size() << " entries, expected " << expected;
    if (table_.size() < expected) {
      const auto missing = static_cast<std::size_t>(table_.size());
      const int n = scenario_.parties();
      os << "; missing index " << missing << " (x=" << format_labels(missing >> n, n)
         << ", a=" << format_labels(missing & (scenario_.joint_count() - 1), n) << ")";
    }
    throw StructuralError(os.str());
  }
}

Behavior Behavior::uniform(Scenario scenario) {
  return Behavior(scenario, RVector::Constant(scenario.table_size(),
                                              1.0 / static_cast<double>(scenario.joint_count())));
}

Behavior Behavior::zero(Scenario scenario) {
  return Behavior(scenario, RVector::Zero(scenario.table_size()));
}

Behavior mix(const Behavior& first, const Behavior& second, double lambda) {
  if (first.scenario() != second.scenario()) throw StructuralError("scenario mismatch in mix");
  return Behavior(first.scenario(), lambda * first.table() + (1.0 - lambda) * second.table());
}

double max_residual(const Behavior& first, const Behavior& second) {
  if (first.scenario() != second.scenario()) throw StructuralError("scenario mismatch");
  return max_abs(first.table() - second.table());
}

BellFunctional::BellFunctional(Scenario scenario, RVector coefficients)
    : scenario_(scenario), coefficients_(std::move(coefficients)) {
  const auto expected = static_cast<Eigen::Index>(scenario_.table_size());
  if (coefficients_.size() != expected) {
    std::ostringstream os;
    os << "functional has " << coefficients_.size() << " coefficients, expected " << expected;
    throw StructuralError(os.str());
  }
  if (!coefficients_.allFinite()) throw ValidationError("functional coefficients must be finite");
}

BellFunctional BellFunctional::zero(Scenario scenario) {
  return BellFunctional(scenario, RVector::Zero(scenario.table_size()));
}

std::string Violation::describe(int n_parties) const {
  std::ostringstream os;
  if (kind == Kind::kRange) {
    os << "probability out of [0,1] at x=" << format_labels(settings, n_parties)
       << ", a=" << format_labels(*outcomes, n_parties);
  } else {
    os << "outcome probabilities do not sum to 1 at x=" << format_labels(settings, n_parties);
  }
  os << " (residual " << residual << ")";
  return os.str();
}

ValidationReport validate_behavior(const Behavior& b) {
  const Scenario& s = b.scenario();
  ValidationReport report;
  for (std::size_t x = 0; x < s.joint_count(); ++x) {
    double sum = 0.0;
    for (std::size_t a = 0; a < s.joint_count(); ++a) {
      const double p = b(x, a);
      if (!std::isfinite(p) || p < -kProbabilityTol || p > 1.0 + kProbabilityTol) {
        const double residual = std::isfinite(p) ? (p < 0.0 ? -p : p - 1.0) : p;
        report.push_back({Violation::Kind::kRange, x, a, residual});
      }
      sum += p;
    }
    if (!(std::abs(sum - 1.0) <= kNormalizationTol)) {
      report.push_back({Violation::Kind::kNormalization, x, std::nullopt, sum - 1.0});
    }
  }
  return report;
}

void require_valid(const Behavior& b) {
  auto report = validate_behavior(b);
  if (!report.empty()) {
    throw ValidationError("invalid behavior: " + report.front().describe(b.scenario().parties()));
  }
}

FullCorrelation correlators(const Behavior& b) {
  require_valid(b);
  const Scenario& s = b.scenario();
  RVector values = RVector::Zero(s.joint_count());
  for (std::size_t x = 0; x < s.joint_count(); ++x) {
    for (std::size_t a = 0; a < s.joint_count(); ++a) {
      values(x) += parity_sign(a, s.parties()) * b(x, a);
    }
  }
  return {s, values};
}

double bell_value(const BellFunctional& f, const Behavior& b) {
  if (f.scenario() != b.scenario()) throw StructuralError("functional and behavior scenarios differ");
  return f.coefficients().dot(b.table());
}

Behavior deterministic_behavior(const Scenario& s, std::span<const LocalAssignment> strategy) {
  if (static_cast<int>(strategy.size()) != s.parties()) {
    throw StructuralError("deterministic strategy needs one assignment per party");
  }
  Behavior b = Behavior::zero(s);
  for (std::size_t x = 0; x < s.joint_count(); ++x) {
    std::size_t a = 0;
    for (int n = 0; n < s.parties(); ++n) {
      const int outcome = strategy[n][s.bit(x, n)];
      if (outcome != 1 && outcome != 2) throw StructuralError("outcomes must be 1 or 2");
      a = (a << 1) | static_cast<std::size_t>(outcome - 1);
    }
    b.table()(s.entry(x, a)) = 1.0;
  }
  return b;
}

BellFunctional correlator_functional(const Scenario& s, const RVector& weights) {
  if (weights.size() != static_cast<Eigen::Index>(s.joint_count())) {
    throw StructuralError("correlator weights need one entry per settings vector");
  }
  RVector beta(s.table_size());
  for (std::size_t x = 0; x < s.joint_count(); ++x) {
    for (std::size_t a = 0; a < s.joint_count(); ++a) {
      beta(s.entry(x, a)) = weights(x) * parity_sign(a, s.parties());
    }
  }
  return BellFunctional(s, beta);
}

BellFunctional homogenize(const BellFunctional& f, double bound, BoundSense sense) {
  const double share = bound / static_cast<double>(f.scenario().joint_count());
  RVector beta = (sense == BoundSense::kAtMost)
                     ? RVector((-f.coefficients()).array() + share)
                     : RVector(f.coefficients().array() - share);
  return BellFunctional(f.scenario(), beta);
}

Behavior pr_box() {
  Scenario s(2);
  Behavior b = Behavior::zero(s);
  for (std::size_t x = 0; x < 4; ++x) {
    const int and_bit = s.bit(x, 0) & s.bit(x, 1);
    for (std::size_t a = 0; a < 4; ++a) {
      if ((s.bit(a, 0) ^ s.bit(a, 1)) == and_bit) b.table()(s.entry(x, a)) = 0.5;
    }
  }
  return b;
}

BellFunctional chsh_correlator() {
  RVector w(4);
  w << 1, 1, 1, -1;
  return correlator_functional(Scenario(2), w);
}

BellFunctional chsh() { return homogenize(chsh_correlator(), 2.0, BoundSense::kAtMost); }

BellFunctional mermin_correlator() {
  // Settings order: (1,1,1) (1,1,2) (1,2,1) (1,2,2) (2,1,1) (2,1,2) (2,2,1) (2,2,2).
  RVector w = RVector::Zero(8);
  w(1) = 1;
  w(2) = 1;
  w(4) = 1;
  w(7) = -1;
  return correlator_functional(Scenario(3), w);
}

}  // namespace bellq
