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

#include "bellq/compression.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace bellq {

namespace {

CMatrix clean_projector(const CMatrix& a) {
  CMatrix basis = range_basis(a);
  return basis * basis.adjoint();
}

void require_jordan_form(const LocalMeasurement& m, int party) {
  std::ostringstream where;
  where << "party " << party + 1 << ": ";
  if (!is_projective(m)) throw PreconditionError(where.str() + "effects are not projective");
  for (const auto& pair : party_range_overlaps(m)) {
    if (pair.overlap_dimension != 0) {
      throw PreconditionError(where.str() + "effect ranges share vectors; run strip_shared_vectors first");
    }
  }
  for (int x = 0; x < 2; ++x) {
    for (int a = 0; a < 2; ++a) {
      if (2 * hermitian_rank(m(x, a)) != m.dim) {
        throw PreconditionError(where.str() + "effect ranks are not balanced at dim/2");
      }
    }
  }
}

}  // namespace

CMatrix PartyBlocks::frame() const {
  const Eigen::Index d = blocks.empty() ? 0 : blocks.front().frame.rows();
  CMatrix out(d, 2 * static_cast<Eigen::Index>(blocks.size()));
  for (std::size_t k = 0; k < blocks.size(); ++k) out.middleCols(2 * k, 2) = blocks[k].frame;
  return out;
}

PartyBlocks party_jordan_blocks(const LocalMeasurement& m, int party, const CMatrix* range_basis_hint) {
  require_jordan_form(m, party);
  const CMatrix& p11 = m(0, 0);
  const CMatrix& p12 = m(1, 0);
  const CMatrix basis = range_basis_hint ? *range_basis_hint : range_basis(p11);
  if (basis.rows() != m.dim || 2 * basis.cols() != m.dim) {
    throw StructuralError("range basis hint does not match range A(1|1)");
  }

  // G₁ = A(1|1) A(1|2) A(1|1) restricted to range A(1|1).
  CMatrix g = basis.adjoint() * p12 * basis;
  g = (g + g.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(g);

  PartyBlocks out;
  out.party = party;
  for (Eigen::Index k = 0; k < basis.cols(); ++k) {
    const double c = es.eigenvalues()(k);
    if (c < kAngleEdgeTol || c > 1.0 - kAngleEdgeTol) {
      std::ostringstream os;
      os << "party " << party + 1 << ": G eigenvalue " << c
         << " is at the edge of (0, 1); strip shared vectors with a tighter threshold";
      throw PreconditionError(os.str());
    }
    CVector v = basis * es.eigenvectors().col(k);
    v.normalize();
    const CVector v1 = p12 * v;
    CVector perp = v1 - v.dot(v1) * v;
    perp.normalize();

    JordanBlock block;
    block.frame.resize(m.dim, 2);
    block.frame.col(0) = v;
    block.frame.col(1) = perp;
    block.projector = block.frame * block.frame.adjoint();
    const CMatrix first = clean_projector(block.frame.adjoint() * p11 * block.frame);
    const CMatrix second = clean_projector(block.frame.adjoint() * p12 * block.frame);
    block.qubit = LocalMeasurement::projective(first, second);
    block.g_eigenvalue = c;
    block.angle = std::acos(std::sqrt(c));
    out.blocks.push_back(std::move(block));
  }
  return out;
}

Behavior BlockDecomposition::mixture(int n_parties) const {
  Behavior total = Behavior::zero(Scenario(n_parties));
  for (const auto& term : terms) {
    if (term.qubit_strategy) total.table() += term.weight * born_behavior_unchecked(*term.qubit_strategy).table();
  }
  return total;
}

BlockDecomposition compress(const QuantumStrategy& s) {
  validate(s);
  std::vector<PartyBlocks> blocks;
  for (int n = 0; n < s.parties(); ++n) blocks.push_back(party_jordan_blocks(s.measurements[n], n));
  return compress(s, blocks);
}

BlockDecomposition compress(const QuantumStrategy& s, const std::vector<PartyBlocks>& blocks) {
  const int n_parties = s.parties();
  BlockDecomposition out;
  out.party_blocks = blocks;

  CMatrix rotated = s.state;
  for (int n = 0; n < n_parties; ++n) {
    const CMatrix frame_adj = blocks[n].frame().adjoint();
    rotated = conjugate_local(rotated, frame_adj, n, s.dims);
  }

  std::vector<Eigen::Index> stride(n_parties, 1);
  for (int n = n_parties - 2; n >= 0; --n) stride[n] = stride[n + 1] * s.dims[n + 1];
  std::size_t count = 1;
  for (const auto& pb : blocks) count *= static_cast<std::size_t>(pb.count());
  const std::size_t qubit_dim = std::size_t{1} << n_parties;

  bool any = false;
  std::vector<int> k(n_parties, 0);
  for (std::size_t t = 0; t < count; ++t) {
    std::size_t rem = t;
    for (int n = n_parties - 1; n >= 0; --n) {
      k[n] = static_cast<int>(rem % blocks[n].count());
      rem /= blocks[n].count();
    }
    std::vector<Eigen::Index> idx(qubit_dim);
    for (std::size_t q = 0; q < qubit_dim; ++q) {
      Eigen::Index full = 0;
      for (int n = 0; n < n_parties; ++n) {
        const auto bit = static_cast<Eigen::Index>((q >> (n_parties - 1 - n)) & 1U);
        full += (2 * k[n] + bit) * stride[n];
      }
      idx[q] = full;
    }
    CMatrix sub = rotated(idx, idx);
    BlockTerm term{k, sub.trace().real(), std::nullopt};
    if (term.weight > kBlockWeightCutoff) {
      any = true;
      QuantumStrategy qs;
      qs.dims.assign(n_parties, 2);
      qs.state = (sub + sub.adjoint()) / (2.0 * term.weight);
      for (int n = 0; n < n_parties; ++n) qs.measurements.push_back(blocks[n].blocks[k[n]].qubit);
      term.qubit_strategy = std::move(qs);
    }
    out.terms.push_back(std::move(term));
  }
  if (!any) throw InternalError("compress: every block weight is below the cutoff");

  out.reconstruction_residual = max_residual(out.mixture(n_parties), born_behavior_unchecked(s));
  if (out.reconstruction_residual > 1e-6) {
    std::ostringstream os;
    os << "compress: block mixture misses the input behavior by " << out.reconstruction_residual;
    throw InternalError(os.str());
  }
  return out;
}

Behavior Decomposition::reconstruct() const {
  Behavior total = Behavior::zero(behavior.scenario());
  const int n_parties = behavior.scenario().parties();
  for (const auto& term : terms) {
    for (const auto& step : term.reduction.steps) {
      if (step.factor_behavior) {
        total.table() += term.mixture_weight * step.absolute_weight * step.factor_behavior->table();
      }
    }
    if (term.blocks && term.reduction.residual_weight > 0.0) {
      total.table() += term.mixture_weight * term.reduction.residual_weight *
                       term.blocks->mixture(n_parties).table();
    }
  }
  return total;
}

Decomposition decompose(const QuantumStrategy& s) {
  Decomposition out{born_behavior(s), {}, 0.0};
  StrategyMixture mixture;
  if (check_projective(s).all()) {
    mixture.weights = {1.0};
    mixture.strategies = {s};
  } else {
    mixture = projectivize_strategy(s);
  }
  for (std::size_t j = 0; j < mixture.size(); ++j) {
    DecompositionTerm term{mixture.weights[j], std::move(mixture.strategies[j]), {}, std::nullopt};
    term.reduction = strip_shared_vectors(term.projective);
    if (term.reduction.reduced) term.blocks = compress(*term.reduction.reduced);
    out.terms.push_back(std::move(term));
  }
  out.reconstruction_residual = max_residual(out.reconstruct(), out.behavior);
  return out;
}

CMatrix filtered_state_full(const QuantumStrategy& s, const std::vector<CMatrix>& projectors) {
  CMatrix out = s.state;
  for (int n = 0; n < s.parties(); ++n) out = conjugate_local(out, projectors[n], n, s.dims);
  return out / out.trace().real();
}

SloccFilter slocc_filter(const QuantumStrategy& s, const BellFunctional& f) {
  return slocc_filter(decompose(s), s, f);
}

SloccFilter slocc_filter(const Decomposition& d, const QuantumStrategy& s, const BellFunctional& f) {
  SloccFilter out;
  out.original_value = bell_value(f, d.behavior);
  if (!(out.original_value < 0.0)) {
    std::ostringstream os;
    os << "slocc_filter: the strategy does not violate the functional (value " << out.original_value << ")";
    throw PreconditionError(os.str());
  }

  const SloccCandidate* best = nullptr;
  for (std::size_t j = 0; j < d.terms.size(); ++j) {
    const auto& term = d.terms[j];
    for (const auto& step : term.reduction.steps) {
      if (!step.factor_behavior) continue;
      const double v = bell_value(f, *step.factor_behavior);
      if (!out.best_factor_value || v < *out.best_factor_value) out.best_factor_value = v;
    }
    if (!term.blocks) continue;
    for (const auto& bt : term.blocks->terms) {
      if (!bt.qubit_strategy) continue;
      const double v = bell_value(f, born_behavior_unchecked(*bt.qubit_strategy));
      out.candidates.push_back(
          {j, bt.blocks, term.mixture_weight * term.reduction.residual_weight * bt.weight, v});
    }
  }
  for (const auto& c : out.candidates) {
    if (best == nullptr || c.value < best->value) best = &c;
  }

  const double tol = 1e-9;
  if (best == nullptr || best->value > out.original_value + tol) {
    std::ostringstream os;
    if (out.best_factor_value && *out.best_factor_value <= out.original_value + tol) {
      os << "slocc_filter: the violation is carried by a factorizable term (value "
         << *out.best_factor_value << ") rather than by a rank-2 block";
      throw PreconditionError(os.str());
    }
    os << "slocc_filter: no mixture component reaches the original value " << out.original_value
       << "; candidates:";
    for (const auto& c : out.candidates) os << " [term " << c.term << " weight " << c.weight << " value " << c.value << "]";
    throw InternalError(os.str());
  }

  out.term = best->term;
  out.blocks = best->blocks;
  const auto& term = d.terms[best->term];
  std::vector<int> dims = s.dims;
  CMatrix sigma = s.state;
  for (int n = 0; n < s.parties(); ++n) {
    const CMatrix frame =
        term.reduction.isometries[n] * term.blocks->party_blocks[n].blocks[best->blocks[n]].frame;
    out.frames.push_back(frame);
    out.projectors.push_back(frame * frame.adjoint());
    const CMatrix frame_adj = frame.adjoint();
    sigma = conjugate_local(sigma, frame_adj, n, dims);
    dims[n] = 2;
  }
  out.success_probability = sigma.trace().real();
  out.filtered_state = (sigma + sigma.adjoint()) / (2.0 * out.success_probability);

  out.qubit_strategy.dims = dims;
  out.qubit_strategy.state = out.filtered_state;
  for (int n = 0; n < s.parties(); ++n) {
    out.qubit_strategy.measurements.push_back(
        term.blocks->party_blocks[n].blocks[best->blocks[n]].qubit);
  }
  out.filtered_value = bell_value(f, born_behavior_unchecked(out.qubit_strategy));
  return out;
}

}  // namespace bellq
