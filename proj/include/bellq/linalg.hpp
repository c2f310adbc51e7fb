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

// Dense linear-algebra helpers on Eigen types. Everything here is templated
// on the Eigen expression type so that the same code serves real and complex
// matrices in any floating-point precision.

#ifndef BELLQ_LINALG_HPP_
#define BELLQ_LINALG_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "bellq/error.hpp"

namespace bellq {

template <typename Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using ComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

using CMatrix = ComplexMatrix<double>;
using CVector = ComplexVector<double>;
using RVector = Eigen::VectorXd;

template <typename Derived>
using PlainMatrix = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Derived>
using RealOf = typename Eigen::NumTraits<typename Derived::Scalar>::Real;

/// Kronecker product a ⊗ b, with a as the most significant factor.
template <typename DA, typename DB>
PlainMatrix<DA> kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  PlainMatrix<DA> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

template <typename Derived>
RealOf<Derived> max_abs(const Eigen::MatrixBase<Derived>& a) {
  if (a.size() == 0) return RealOf<Derived>(0);
  return a.cwiseAbs().maxCoeff();
}

template <typename Derived>
RealOf<Derived> hermitian_residual(const Eigen::MatrixBase<Derived>& a) {
  return max_abs(a - a.adjoint());
}

/// ‖A² − A‖ in the max-entry norm.
template <typename Derived>
RealOf<Derived> idempotence_residual(const Eigen::MatrixBase<Derived>& a) {
  PlainMatrix<Derived> sq = a * a;
  return max_abs(sq - a);
}

/// Eigenvalues of the Hermitian part of `a`, ascending.
template <typename Derived>
Eigen::Matrix<RealOf<Derived>, Eigen::Dynamic, 1> hermitian_eigenvalues(
    const Eigen::MatrixBase<Derived>& a) {
  PlainMatrix<Derived> h = (a + a.adjoint()) / RealOf<Derived>(2);
  Eigen::SelfAdjointEigenSolver<PlainMatrix<Derived>> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

template <typename Derived>
RealOf<Derived> min_eigenvalue(const Eigen::MatrixBase<Derived>& a) {
  if (a.rows() == 0) return RealOf<Derived>(0);
  return hermitian_eigenvalues(a)(0);
}

/// Number of eigenvalues of a Hermitian matrix above `threshold`.
template <typename Derived>
int hermitian_rank(const Eigen::MatrixBase<Derived>& a, RealOf<Derived> threshold = 0.5) {
  if (a.rows() == 0) return 0;
  auto ev = hermitian_eigenvalues(a);
  return static_cast<int>((ev.array() > threshold).count());
}

/// Orthonormal basis (as columns) of the eigenspace of a Hermitian matrix with
/// eigenvalues above `threshold`. For a projector this is its range.
template <typename Derived>
PlainMatrix<Derived> range_basis(const Eigen::MatrixBase<Derived>& a,
                                 RealOf<Derived> threshold = 0.5) {
  const Eigen::Index d = a.rows();
  if (d == 0) return PlainMatrix<Derived>(0, 0);
  PlainMatrix<Derived> h = (a + a.adjoint()) / RealOf<Derived>(2);
  Eigen::SelfAdjointEigenSolver<PlainMatrix<Derived>> es(h);
  const auto& ev = es.eigenvalues();
  Eigen::Index first = 0;
  while (first < d && ev(first) <= threshold) ++first;
  return es.eigenvectors().rightCols(d - first);
}

/// Orthonormal basis of the orthogonal complement of the span of the
/// (orthonormal) columns of `v`.
template <typename Derived>
PlainMatrix<Derived> orthogonal_complement(const Eigen::MatrixBase<Derived>& v) {
  const Eigen::Index d = v.rows();
  PlainMatrix<Derived> proj = PlainMatrix<Derived>::Identity(d, d) - v * v.adjoint();
  return range_basis(proj);
}

/// Rank-one projector |v⟩⟨v| / ⟨v|v⟩.
template <typename Derived>
PlainMatrix<Derived> projector_onto(const Eigen::MatrixBase<Derived>& v) {
  return (v * v.adjoint()) / v.squaredNorm();
}

inline std::size_t product(std::span<const int> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         [](std::size_t acc, int d) { return acc * static_cast<std::size_t>(d); });
}

/// (I ⊗ … ⊗ op ⊗ … ⊗ I) · m where op acts on factor `party` of the tensor
/// product with local dimensions `dims`. op may be rectangular, in which case
/// the result has the corresponding factor replaced by op.rows().
template <typename DM, typename DO>
PlainMatrix<DM> apply_local(const Eigen::MatrixBase<DM>& m, const Eigen::MatrixBase<DO>& op,
                            int party, std::span<const int> dims) {
  const Eigen::Index d_in = dims[party];
  if (op.cols() != d_in || static_cast<std::size_t>(m.rows()) != product(dims)) {
    throw StructuralError("apply_local: operator does not fit the tensor factor");
  }
  const Eigen::Index d_out = op.rows();
  Eigen::Index post = 1;
  for (std::size_t k = party + 1; k < dims.size(); ++k) post *= dims[k];
  const Eigen::Index pre = m.rows() / (d_in * post);
  PlainMatrix<DM> out = PlainMatrix<DM>::Zero(pre * d_out * post, m.cols());
  for (Eigen::Index p = 0; p < pre; ++p) {
    for (Eigen::Index o = 0; o < d_out; ++o) {
      for (Eigen::Index i = 0; i < d_in; ++i) {
        const auto c = op(o, i);
        if (c == typename DO::Scalar(0)) continue;
        out.middleRows((p * d_out + o) * post, post) +=
            c * m.middleRows((p * d_in + i) * post, post);
      }
    }
  }
  return out;
}

/// O m O† with O = I ⊗ … ⊗ op ⊗ … ⊗ I.
template <typename DM, typename DO>
PlainMatrix<DM> conjugate_local(const Eigen::MatrixBase<DM>& m, const Eigen::MatrixBase<DO>& op,
                                int party, std::span<const int> dims) {
  PlainMatrix<DM> left = apply_local(m, op, party, dims);
  PlainMatrix<DM> left_adj = left.adjoint();
  // left_adj has rows indexed by the input dims, columns by the output dims.
  PlainMatrix<DM> both = apply_local(left_adj, op, party, dims);
  return both.adjoint();
}

/// Reduced operator M on factor `party` with tr[M A] = tr[ρ (A ⊗ R)] for every
/// A on that factor, where R acts on the remaining factors in their original
/// order.
template <typename DR, typename DO>
PlainMatrix<DR> contract_complement(const Eigen::MatrixBase<DR>& rho,
                                    const Eigen::MatrixBase<DO>& rest_op, int party,
                                    std::span<const int> dims) {
  const Eigen::Index d = dims[party];
  Eigen::Index post = 1;
  for (std::size_t k = party + 1; k < dims.size(); ++k) post *= dims[k];
  const Eigen::Index pre = rho.rows() / (d * post);
  if (rest_op.rows() != pre * post || rest_op.cols() != pre * post) {
    throw StructuralError("contract_complement: operator does not fit the complement");
  }
  PlainMatrix<DR> out = PlainMatrix<DR>::Zero(d, d);
  // out(i, j) = Σ ρ[(p,i,q),(p',j,q')] R[(p',q'),(p,q)]
  for (Eigen::Index p = 0; p < pre; ++p) {
    for (Eigen::Index q = 0; q < post; ++q) {
      const Eigen::Index rc = p * post + q;
      for (Eigen::Index i = 0; i < d; ++i) {
        const Eigen::Index row = (p * d + i) * post + q;
        for (Eigen::Index pp = 0; pp < pre; ++pp) {
          for (Eigen::Index qq = 0; qq < post; ++qq) {
            const auto r = rest_op(pp * post + qq, rc);
            if (r == typename DO::Scalar(0)) continue;
            for (Eigen::Index j = 0; j < d; ++j) {
              out(i, j) += rho(row, (pp * d + j) * post + qq) * r;
            }
          }
        }
      }
    }
  }
  return out;
}

/// Haar-random unitary via QR of a complex Ginibre matrix with the phase
/// correction that makes the distribution exactly Haar.
template <typename Real, typename Rng>
ComplexMatrix<Real> random_unitary(Eigen::Index d, Rng& rng) {
  std::normal_distribution<Real> normal(0, 1);
  ComplexMatrix<Real> g(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) g(i, j) = {normal(rng), normal(rng)};
  Eigen::HouseholderQR<ComplexMatrix<Real>> qr(g);
  ComplexMatrix<Real> q = qr.householderQ();
  ComplexMatrix<Real> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < d; ++k) {
    const Real mag = std::abs(r(k, k));
    if (mag > 0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

template <typename Real, typename Rng>
ComplexVector<Real> random_unit_vector(Eigen::Index d, Rng& rng) {
  std::normal_distribution<Real> normal(0, 1);
  ComplexVector<Real> v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = {normal(rng), normal(rng)};
  return v / v.norm();
}

}  // namespace bellq

#endif  // BELLQ_LINALG_HPP_
