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

// Compression of a strategy whose effect ranges intersect trivially into a
// mixture of N-qubit strategies, one per choice of two-dimensional invariant
// block per party, and the local rank-2 filter that keeps the most violating
// block.

#ifndef BELLQ_COMPRESSION_HPP_
#define BELLQ_COMPRESSION_HPP_

#include <optional>
#include <vector>

#include "bellq/projectivize.hpp"
#include "bellq/reduction.hpp"

namespace bellq {

inline constexpr double kAngleEdgeTol = 1e-8;
inline constexpr double kBlockWeightCutoff = 1e-12;

struct JordanBlock {
  CMatrix frame;      // d × 2: (|v_k⟩, |v_k^⊥⟩), orthonormal
  CMatrix projector;  // E^k
  LocalMeasurement qubit;
  double angle;         // θ_k in (0, π/2)
  double g_eigenvalue;  // cos²θ_k, eigenvalue of A(1|1)A(1|2)A(1|1) on |v_k⟩
};

struct PartyBlocks {
  int party = 0;
  std::vector<JordanBlock> blocks;  // ascending g_eigenvalue

  int count() const { return static_cast<int>(blocks.size()); }
  /// d × d unitary whose column pairs are the block frames.
  CMatrix frame() const;
};

/// Requires projective effects, trivial range intersections and rank dim/2
/// for all four effects. `range_basis_hint`, when given, must be an
/// orthonormal basis of range A(1|1); it selects the eigenbasis inside
/// degenerate eigenspaces.
PartyBlocks party_jordan_blocks(const LocalMeasurement& m, int party = 0,
                                const CMatrix* range_basis_hint = nullptr);

struct BlockTerm {
  std::vector<int> blocks;  // 0-based block index per party
  double weight;            // π^[k]
  std::optional<QuantumStrategy> qubit_strategy;  // present iff weight > cutoff
};

struct BlockDecomposition {
  std::vector<PartyBlocks> party_blocks;
  std::vector<BlockTerm> terms;  // all block vectors, party 1 slowest
  double reconstruction_residual = 0.0;

  /// Σ π^[k] born(qubit strategy k).
  Behavior mixture(int n_parties) const;
};

BlockDecomposition compress(const QuantumStrategy& s);
BlockDecomposition compress(const QuantumStrategy& s, const std::vector<PartyBlocks>& blocks);

/// Full chain for an arbitrary strategy: projectivize, then per term strip
/// shared vectors and compress what remains.
struct DecompositionTerm {
  double mixture_weight;
  QuantumStrategy projective;
  ReductionResult reduction;
  std::optional<BlockDecomposition> blocks;  // absent when fully factorized
};

struct Decomposition {
  Behavior behavior;  // born_behavior of the input
  std::vector<DecompositionTerm> terms;
  double reconstruction_residual = 0.0;

  /// Factor terms plus weighted block behaviors.
  Behavior reconstruct() const;
};

Decomposition decompose(const QuantumStrategy& s);

struct SloccCandidate {
  std::size_t term;
  std::vector<int> blocks;
  double weight;  // absolute weight in the full mixture
  double value;
};

struct SloccFilter {
  std::vector<CMatrix> projectors;  // X_n, rank 2, original coordinates
  std::vector<CMatrix> frames;      // d_n × 2 isometries onto range X_n
  double success_probability;
  CMatrix filtered_state;  // N-qubit state in the frames
  QuantumStrategy qubit_strategy;
  double original_value;
  double filtered_value;
  std::size_t term;
  std::vector<int> blocks;
  std::vector<SloccCandidate> candidates;
  std::optional<double> best_factor_value;
};

/// Requires bell_value(f, born(s)) < 0. Picks the block vector with the most
/// negative value (lowest index on ties).
SloccFilter slocc_filter(const QuantumStrategy& s, const BellFunctional& f);
SloccFilter slocc_filter(const Decomposition& d, const QuantumStrategy& s, const BellFunctional& f);

/// X ρ X / tr[ρ X] with X = ⊗ X_n, in the original space.
CMatrix filtered_state_full(const QuantumStrategy& s, const std::vector<CMatrix>& projectors);

}  // namespace bellq

#endif  // BELLQ_COMPRESSION_HPP_
