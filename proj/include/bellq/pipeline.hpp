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

// End-to-end chain: behavior, classical certificate, projectivization,
// reduction, block compression and the rank-2 filter, gathered in one report.

#ifndef BELLQ_PIPELINE_HPP_
#define BELLQ_PIPELINE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "bellq/io.hpp"

namespace bellq {

struct PipelineTermSummary {
  double mixture_weight;
  std::size_t reduction_steps;
  double residual_weight;
  std::optional<int> factorized_party;
  std::vector<int> blocks_per_party;
  std::vector<std::pair<std::string, double>> block_weights;
};

struct PipelineReport {
  std::vector<int> dims;
  Behavior behavior;
  FullCorrelation correlators;
  std::optional<std::string> certificate_kind;  // absent above the LP size guard
  std::vector<PipelineTermSummary> terms;
  double reconstruction_residual;
  double original_value;
  double classical_bound;
  std::optional<SloccFilter> filter;
  std::string status;

  Json to_json() const;
  std::string to_text() const;
};

PipelineReport run_pipeline(const QuantumStrategy& s, const BellFunctional& f);

}  // namespace bellq

#endif  // BELLQ_PIPELINE_HPP_
