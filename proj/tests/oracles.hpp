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

// Independent reference computations for the test suites. Nothing here calls
// the library's numerical routines; only plain data types are shared.

#ifndef BELLQ_TESTS_ORACLES_HPP_
#define BELLQ_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "bellq/quantum.hpp"

namespace bellq::oracle {

using Complex = std::complex<double>;

inline const double kSqrt2 = std::numbers::sqrt2;

/// Born table by brute force: every joint operator is assembled entry by entry
/// from mixed-radix digits, then traced against the state.
inline RVector born(const QuantumStrategy& s) {
  const int n = static_cast<int>(s.dims.size());
  std::size_t total = 1;
  for (int d : s.dims) total *= static_cast<std::size_t>(d);
  const std::size_t joint = std::size_t{1} << n;
  RVector out(joint * joint);
  std::vector<int> di(n), dj(n);
  for (std::size_t x = 0; x < joint; ++x) {
    for (std::size_t a = 0; a < joint; ++a) {
      Complex acc = 0;
      for (std::size_t i = 0; i < total; ++i) {
        std::size_t r = i;
        for (int p = n - 1; p >= 0; --p) {
          di[p] = static_cast<int>(r % s.dims[p]);
          r /= s.dims[p];
        }
        for (std::size_t j = 0; j < total; ++j) {
          std::size_t c = j;
          for (int p = n - 1; p >= 0; --p) {
            dj[p] = static_cast<int>(c % s.dims[p]);
            c /= s.dims[p];
          }
          Complex op = 1;
          for (int p = 0; p < n && op != Complex(0); ++p) {
            const int xs = static_cast<int>((x >> (n - 1 - p)) & 1U);
            const int as = static_cast<int>((a >> (n - 1 - p)) & 1U);
            op *= s.measurements[p].effects[xs][as](di[p], dj[p]);
          }
          acc += s.state(j, i) * op;
        }
      }
      out(x * joint + a) = acc.real();
    }
  }
  return out;
}

/// Deterministic table straight from the definition: probability one on the
/// joint outcome each party's rule selects.
inline RVector deterministic(int n, const std::vector<std::array<int, 2>>& rule) {
  const std::size_t joint = std::size_t{1} << n;
  RVector out = RVector::Zero(joint * joint);
  for (std::size_t x = 0; x < joint; ++x) {
    std::size_t a = 0;
    for (int p = 0; p < n; ++p) {
      const int xs = static_cast<int>((x >> (n - 1 - p)) & 1U);
      a = 2 * a + static_cast<std::size_t>(rule[p][xs] - 1);
    }
    out(x * joint + a) = 1.0;
  }
  return out;
}

/// All local deterministic rules for n parties, labels 1/2.
inline std::vector<std::vector<std::array<int, 2>>> all_rules(int n) {
  std::vector<std::vector<std::array<int, 2>>> rules;
  const std::size_t count = std::size_t{1} << (2 * n);
  for (std::size_t code = 0; code < count; ++code) {
    std::vector<std::array<int, 2>> rule(n);
    for (int p = 0; p < n; ++p) {
      const std::size_t local = (code >> (2 * (n - 1 - p))) & 3U;
      rule[p] = {static_cast<int>(local >> 1) + 1, static_cast<int>(local & 1U) + 1};
    }
    rules.push_back(rule);
  }
  return rules;
}

/// Extremes of a correlator expression over local ±1 assignments, integer
/// arithmetic only. Weights are indexed by linearized settings.
inline std::pair<long, long> correlator_extremes(int n, const std::vector<long>& weights) {
  long lo = 0, hi = 0;
  bool first = true;
  for (const auto& rule : all_rules(n)) {
    long total = 0;
    for (std::size_t x = 0; x < weights.size(); ++x) {
      long sign = 1;
      for (int p = 0; p < n; ++p) {
        const int xs = static_cast<int>((x >> (n - 1 - p)) & 1U);
        sign *= rule[p][xs] == 1 ? 1 : -1;
      }
      total += weights[x] * sign;
    }
    if (first || total < lo) lo = total;
    if (first || total > hi) hi = total;
    first = false;
  }
  return {lo, hi};
}

inline CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

/// Outcome-1 projector for the spin observable cosθ Z + sinθ X, i.e. the
/// projector onto its −1 eigenvector, so ⟨A(2)−A(1)⟩ = ⟨observable⟩.
inline CMatrix spin_projector(double theta) {
  const CMatrix obs = std::cos(theta) * pauli_z() + std::sin(theta) * pauli_x();
  return 0.5 * (CMatrix::Identity(2, 2) - obs);
}

inline LocalMeasurement spin_measurement(double theta1, double theta2) {
  LocalMeasurement m;
  m.dim = 2;
  const CMatrix id = CMatrix::Identity(2, 2);
  m.effects[0] = {spin_projector(theta1), id - spin_projector(theta1)};
  m.effects[1] = {spin_projector(theta2), id - spin_projector(theta2)};
  return m;
}

/// (|01⟩ − |10⟩)/√2 as a density matrix.
inline CMatrix singlet() {
  CVector psi = CVector::Zero(4);
  psi(1) = 1 / kSqrt2;
  psi(2) = -1 / kSqrt2;
  return psi * psi.adjoint();
}

/// Singlet strategy with both spin angles per party; it reaches
/// C11+C12+C21−C22 = 2√2 at (0, π/2) vs (5π/4, 3π/4).
inline QuantumStrategy singlet_strategy(double a1, double a2, double b1, double b2) {
  QuantumStrategy s;
  s.dims = {2, 2};
  s.state = singlet();
  s.measurements = {spin_measurement(a1, a2), spin_measurement(b1, b2)};
  return s;
}

inline QuantumStrategy chsh_optimal() {
  const double pi = std::numbers::pi;
  return singlet_strategy(0, pi / 2, 5 * pi / 4, 3 * pi / 4);
}

/// Full correlator sums Σ_a Π_n (−1)^{a_n} P(a|x) with labels a_n ∈ {1, 2}.
inline RVector correlators(const RVector& table, int n) {
  const std::size_t joint = std::size_t{1} << n;
  RVector c = RVector::Zero(joint);
  for (std::size_t x = 0; x < joint; ++x) {
    for (std::size_t a = 0; a < joint; ++a) {
      int ones = 0;
      for (int p = 0; p < n; ++p) ones += static_cast<int>((a >> p) & 1U) + 1;
      c(x) += (ones % 2 == 0 ? 1.0 : -1.0) * table(x * joint + a);
    }
  }
  return c;
}

/// Dense operator Σ_x,a f(x,a) ⊗_n A_n(a_n|x_n), entry by entry.
inline CMatrix bell_operator(const RVector& coefficients, const std::vector<LocalMeasurement>& ms) {
  const int n = static_cast<int>(ms.size());
  std::vector<int> dims;
  std::size_t total = 1;
  for (const auto& m : ms) {
    dims.push_back(m.dim);
    total *= static_cast<std::size_t>(m.dim);
  }
  const std::size_t joint = std::size_t{1} << n;
  CMatrix out = CMatrix::Zero(total, total);
  std::vector<int> di(n), dj(n);
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t j = 0; j < total; ++j) {
      std::size_t r = i, c = j;
      for (int p = n - 1; p >= 0; --p) {
        di[p] = static_cast<int>(r % dims[p]);
        r /= dims[p];
        dj[p] = static_cast<int>(c % dims[p]);
        c /= dims[p];
      }
      Complex acc = 0;
      for (std::size_t x = 0; x < joint; ++x) {
        for (std::size_t a = 0; a < joint; ++a) {
          const double w = coefficients(x * joint + a);
          if (w == 0) continue;
          Complex op = w;
          for (int p = 0; p < n; ++p) {
            const int xs = static_cast<int>((x >> (n - 1 - p)) & 1U);
            const int as = static_cast<int>((a >> (n - 1 - p)) & 1U);
            op *= ms[p].effects[xs][as](di[p], dj[p]);
          }
          acc += op;
        }
      }
      out(i, j) = acc;
    }
  }
  return out;
}

/// Rank by singular values of a column stack.
inline int column_rank(const CMatrix& m, double tol = 1e-8) {
  if (m.cols() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  int r = 0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
    if (svd.singularValues()(k) > tol) ++r;
  return r;
}

/// Orthonormal columns spanning the range of a projector, via a
/// rank-revealing QR on the projector itself.
inline CMatrix projector_columns(const CMatrix& p) {
  Eigen::ColPivHouseholderQR<CMatrix> qr(p);
  qr.setThreshold(1e-8);
  const auto r = qr.rank();
  CMatrix q = qr.householderQ();
  return q.leftCols(r);
}

/// dim(range P ∩ range Q) = rank P + rank Q − rank [P Q].
inline int intersection_dimension(const CMatrix& p, const CMatrix& q) {
  const CMatrix up = projector_columns(p);
  const CMatrix uq = projector_columns(q);
  CMatrix stacked(p.rows(), up.cols() + uq.cols());
  stacked << up, uq;
  return static_cast<int>(up.cols() + uq.cols()) - column_rank(stacked);
}

/// Nonzero eigenvalues of P Q P from a general (non-Hermitian) solver on the
/// product P Q, sorted ascending.
inline std::vector<double> angle_spectrum(const CMatrix& p, const CMatrix& q) {
  Eigen::ComplexEigenSolver<CMatrix> es(p * q);
  std::vector<double> out;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double v = es.eigenvalues()(k).real();
    if (v > 1e-9) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline CMatrix haar_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0, 1);
  CMatrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  // Modified Gram-Schmidt on columns.
  for (int k = 0; k < d; ++k) {
    for (int j = 0; j < k; ++j) g.col(k) -= g.col(j).dot(g.col(k)) * g.col(j);
    g.col(k).normalize();
  }
  return g;
}

/// Random projector of the given rank.
inline CMatrix random_projector(int d, int rank, std::mt19937_64& rng) {
  const CMatrix u = haar_unitary(d, rng);
  return u.leftCols(rank) * u.leftCols(rank).adjoint();
}

/// Random dichotomic POVM effect pair: Haar eigenbasis, eigenvalues uniform.
inline EffectPair random_povm(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0, 1);
  const CMatrix u = haar_unitary(d, rng);
  RVector lam(d);
  for (int k = 0; k < d; ++k) lam(k) = uni(rng);
  const CMatrix e = u * lam.cast<Complex>().asDiagonal() * u.adjoint();
  return {e, CMatrix::Identity(d, d) - e};
}

/// Random density matrix: pure if requested, else a Wishart-style mixture.
inline CMatrix random_state(std::size_t total, bool pure, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0, 1);
  const Eigen::Index cols = pure ? 1 : static_cast<Eigen::Index>(total);
  CMatrix g(total, cols);
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  CMatrix rho = g * g.adjoint();
  return rho / rho.trace();
}

/// Strategy with either POVM effects or projectors of random rank in [0, d].
inline QuantumStrategy random_strategy(const std::vector<int>& dims, bool pure, bool povm,
                                       std::mt19937_64& rng) {
  QuantumStrategy s;
  s.dims = dims;
  std::size_t total = 1;
  for (int d : dims) total *= static_cast<std::size_t>(d);
  s.state = random_state(total, pure, rng);
  for (int d : dims) {
    LocalMeasurement m;
    m.dim = d;
    for (int x = 0; x < 2; ++x) {
      if (povm) {
        m.effects[x] = random_povm(d, rng);
      } else {
        std::uniform_int_distribution<int> rank(0, d);
        const CMatrix p = random_projector(d, rank(rng), rng);
        m.effects[x] = {p, CMatrix::Identity(d, d) - p};
      }
    }
    s.measurements.push_back(m);
  }
  return s;
}

/// Two-block measurement on C^4: setting 1 projects on e1, e3; setting 2 on
/// cosθ_k e_{2k−1} + sinθ_k e_{2k}. Rotated by `u` when given.
inline LocalMeasurement two_angle_measurement(double theta1, double theta2,
                                              const CMatrix* u = nullptr) {
  CMatrix p = CMatrix::Zero(4, 4);
  p(0, 0) = 1;
  p(2, 2) = 1;
  CVector v1 = CVector::Zero(4), v2 = CVector::Zero(4);
  v1(0) = std::cos(theta1);
  v1(1) = std::sin(theta1);
  v2(2) = std::cos(theta2);
  v2(3) = std::sin(theta2);
  CMatrix q = v1 * v1.adjoint() + v2 * v2.adjoint();
  if (u != nullptr) {
    p = (*u) * p * u->adjoint();
    q = (*u) * q * u->adjoint();
  }
  LocalMeasurement m;
  m.dim = 4;
  const CMatrix id = CMatrix::Identity(4, 4);
  m.effects[0] = {p, id - p};
  m.effects[1] = {q, id - q};
  return m;
}

inline double max_abs_diff(const RVector& a, const RVector& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace bellq::oracle

#endif  // BELLQ_TESTS_ORACLES_HPP_
