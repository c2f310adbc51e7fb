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

#include "bellq/classical.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace bellq {

namespace {

// Dense inverse of an m×m basis must stay below this many doubles (1 GiB).
constexpr std::size_t kMaxBasisEntries = std::size_t{1} << 27;
constexpr double kPricingTol = 1e-11;
constexpr double kPivotTol = 1e-12;
constexpr int kRefactorPeriod = 64;

void check_vertex_guard(const Scenario& s) {
  if (s.parties() > kMaxVertexParties) {
    std::ostringstream os;
    os << "vertex enumeration refused for N=" << s.parties() << " (limit N=" << kMaxVertexParties
       << ")";
    throw ResourceError(os.str());
  }
}

// Phase-1 revised simplex for  A w + s = b,  w, s ≥ 0,  minimizing Σ s.
// Columns of A are [vertex; 1]. Artificial column i is sign_i·e_i.
class Phase1Simplex {
 public:
  Phase1Simplex(const VertexSet& vertices, const RVector& rhs)
      : vertices_(vertices),
        rows_(static_cast<Eigen::Index>(rhs.size())),
        cols_(static_cast<Eigen::Index>(vertices.size())),
        joint_(vertices.scenario().joint_count()),
        rhs_(rhs),
        sign_(rhs.size()),
        basis_(rhs.size()),
        basic_(vertices.size(), false) {
    for (Eigen::Index i = 0; i < rows_; ++i) {
      sign_(i) = rhs_(i) < 0.0 ? -1.0 : 1.0;
      basis_[i] = cols_ + i;
    }
    refactor();
  }

  void solve() {
    const Eigen::Index max_pivots = 50 * (rows_ + cols_);
    for (Eigen::Index pivots = 0;; ++pivots) {
      if (pivots > max_pivots) throw LpError("simplex pivot limit reached", objective());
      if (pivots % kRefactorPeriod == kRefactorPeriod - 1) refactor();
      RVector y = duals();
      Eigen::Index entering = -1;
      for (Eigen::Index j = 0; j < cols_; ++j) {
        if (basic_[j]) continue;
        if (-column_dot(y, j) < -kPricingTol) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return;
      RVector u = basis_inverse_times_column(entering);
      Eigen::Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < rows_; ++i) {
        if (u(i) <= kPivotTol) continue;
        const double ratio = std::max(x_basic_(i), 0.0) / u(i);
        if (leave < 0 || ratio < best - 1e-14) {
          best = ratio;
          leave = i;
        } else if (ratio <= best + 1e-14 && basis_[i] < basis_[leave]) {
          leave = i;  // Bland
        }
      }
      if (leave < 0) throw LpError("phase-1 simplex reported an unbounded direction", objective());
      pivot(leave, entering, u);
    }
  }

  double objective() const {
    double total = 0.0;
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (basis_[i] >= cols_) total += x_basic_(i);
    }
    return total;
  }

  RVector duals() const {
    RVector cost = RVector::Zero(rows_);
    for (Eigen::Index i = 0; i < rows_; ++i) cost(i) = basis_[i] >= cols_ ? 1.0 : 0.0;
    return basis_inverse_.transpose() * cost;
  }

  std::map<std::size_t, double> structural_values() const {
    std::map<std::size_t, double> values;
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (basis_[i] < cols_) values[static_cast<std::size_t>(basis_[i])] = x_basic_(i);
    }
    return values;
  }

 private:
  // Row indices carrying a 1 in structural column j.
  template <typename Fn>
  void for_each_row(Eigen::Index j, Fn&& fn) const {
    for (std::size_t x = 0; x < joint_; ++x) {
      fn(static_cast<Eigen::Index>(x * joint_ + vertices_.outcomes(static_cast<std::size_t>(j), x)));
    }
    fn(rows_ - 1);
  }

  double column_dot(const RVector& y, Eigen::Index j) const {
    double acc = 0.0;
    for_each_row(j, [&](Eigen::Index r) { acc += y(r); });
    return acc;
  }

  RVector basis_inverse_times_column(Eigen::Index j) const {
    RVector u = RVector::Zero(rows_);
    for_each_row(j, [&](Eigen::Index r) { u += basis_inverse_.col(r); });
    return u;
  }

  void pivot(Eigen::Index leave, Eigen::Index entering, const RVector& u) {
    const double pivot_value = u(leave);
    basis_inverse_.row(leave) /= pivot_value;
    x_basic_(leave) /= pivot_value;
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (i == leave || u(i) == 0.0) continue;
      basis_inverse_.row(i) -= u(i) * basis_inverse_.row(leave);
      x_basic_(i) -= u(i) * x_basic_(leave);
    }
    if (basis_[leave] < cols_) basic_[basis_[leave]] = false;
    basic_[entering] = true;
    basis_[leave] = entering;
  }

  void refactor() {
    Eigen::MatrixXd basis_matrix = Eigen::MatrixXd::Zero(rows_, rows_);
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const Eigen::Index j = basis_[i];
      if (j >= cols_) {
        basis_matrix(j - cols_, i) = sign_(j - cols_);
      } else {
        for_each_row(j, [&](Eigen::Index r) { basis_matrix(r, i) = 1.0; });
      }
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix);
    basis_inverse_ = lu.inverse();
    x_basic_ = basis_inverse_ * rhs_;
  }

  const VertexSet& vertices_;
  Eigen::Index rows_;
  Eigen::Index cols_;
  std::size_t joint_;
  RVector rhs_;
  RVector sign_;
  std::vector<Eigen::Index> basis_;
  std::vector<bool> basic_;
  Eigen::MatrixXd basis_inverse_;
  RVector x_basic_;
};

}  // namespace

VertexSet::VertexSet(Scenario scenario) : scenario_(scenario) { check_vertex_guard(scenario_); }

std::vector<LocalAssignment> VertexSet::strategy(std::size_t vertex) const {
  const int n_parties = scenario_.parties();
  std::vector<LocalAssignment> out(n_parties);
  for (int n = 0; n < n_parties; ++n) {
    const std::size_t local = (vertex >> (2 * (n_parties - 1 - n))) & 3U;
    out[n] = {static_cast<int>(local >> 1) + 1, static_cast<int>(local & 1U) + 1};
  }
  return out;
}

std::size_t VertexSet::outcomes(std::size_t vertex, std::size_t x) const {
  const int n_parties = scenario_.parties();
  std::size_t a = 0;
  for (int n = 0; n < n_parties; ++n) {
    const std::size_t local = (vertex >> (2 * (n_parties - 1 - n))) & 3U;
    const std::size_t bit = scenario_.bit(x, n) == 0 ? (local >> 1) : (local & 1U);
    a = (a << 1) | bit;
  }
  return a;
}

Behavior VertexSet::behavior(std::size_t vertex) const {
  auto strat = strategy(vertex);
  return deterministic_behavior(scenario_, strat);
}

double VertexSet::value(const BellFunctional& f, std::size_t vertex) const {
  double total = 0.0;
  for (std::size_t x = 0; x < scenario_.joint_count(); ++x) total += f(x, outcomes(vertex, x));
  return total;
}

VertexSet enumerate_vertices(const Scenario& s) { return VertexSet(s); }

LpCertificate is_classical(const Behavior& b) {
  require_valid(b);
  const Scenario& s = b.scenario();
  VertexSet vertices(s);
  const std::size_t rows = s.table_size() + 1;
  if (rows * rows > kMaxBasisEntries) {
    std::ostringstream os;
    os << "membership LP for N=" << s.parties() << " needs a " << rows << "x" << rows
       << " basis inverse, above the memory budget";
    throw ResourceError(os.str());
  }

  RVector rhs(static_cast<Eigen::Index>(rows));
  rhs.head(s.table_size()) = b.table();
  rhs(rows - 1) = 1.0;

  Phase1Simplex lp(vertices, rhs);
  lp.solve();
  const double infeasibility = lp.objective();

  if (infeasibility <= kLpFeasibilityTol) {
    LpCertificate cert{LpCertificate::Kind::kMember, {}, std::nullopt, infeasibility};
    RVector rebuilt = RVector::Zero(s.table_size());
    for (auto [vertex, weight] : lp.structural_values()) {
      if (weight < -kLpFeasibilityTol) throw LpError("negative vertex weight", weight);
      weight = std::max(weight, 0.0);
      if (weight == 0.0) continue;
      cert.weights[vertex] = weight;
      rebuilt += weight * vertices.behavior(vertex).table();
    }
    const double residual = max_abs(rebuilt - b.table());
    if (residual > 1e-8) throw LpError("member weights do not reconstruct the behavior", residual);
    return cert;
  }

  // Dual of the optimal phase-1 basis: y·[v; 1] ≤ 0 for every vertex and
  // y·[p; 1] = infeasibility > 0. Negate and move the constant row into β.
  const RVector y = lp.duals();
  const double spread = y(rows - 1) / static_cast<double>(s.joint_count());
  RVector beta = (-y.head(s.table_size())).array() - spread;
  BellFunctional separating(s, beta);
  separating = classical_bound_shift(separating);

  double worst_vertex = std::numeric_limits<double>::infinity();
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    worst_vertex = std::min(worst_vertex, vertices.value(separating, v));
  }
  const double query = bell_value(separating, b);
  if (worst_vertex < -1e-12) throw LpError("separating functional negative on a vertex", worst_vertex);
  if (!(query < -kLpFeasibilityTol)) throw LpError("separating functional does not cut the query", query);
  return {LpCertificate::Kind::kNonMember, {}, separating, infeasibility};
}

ClassicalBound classical_bound(const BellFunctional& f) {
  VertexSet vertices(f.scenario());
  ClassicalBound best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    const double value = vertices.value(f, v);
    if (value < best.value) best = {value, v};
  }
  return best;
}

BellFunctional classical_bound_shift(const BellFunctional& f) {
  const double bound = classical_bound(f).value;
  const double share = bound / static_cast<double>(f.scenario().joint_count());
  return BellFunctional(f.scenario(), f.coefficients().array() - share);
}

}  // namespace bellq
