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

#include "bellq/pipeline.hpp"

#include <iomanip>
#include <sstream>

namespace bellq {

PipelineReport run_pipeline(const QuantumStrategy& s, const BellFunctional& f) {
  if (f.scenario().parties() != s.parties()) {
    throw StructuralError("functional and strategy have different numbers of parties");
  }
  Decomposition d = decompose(s);
  PipelineReport report{s.dims, d.behavior, correlators(d.behavior), std::nullopt, {},
                        d.reconstruction_residual, bell_value(f, d.behavior),
                        classical_bound(f).value, std::nullopt, "ok"};
  try {
    report.certificate_kind = is_classical(d.behavior).member() ? "member" : "non_member";
  } catch (const ResourceError&) {
    report.certificate_kind.reset();
  }
  for (const auto& term : d.terms) {
    PipelineTermSummary summary{term.mixture_weight, term.reduction.steps.size(),
                                term.reduction.residual_weight, term.reduction.factorized_party,
                                {}, {}};
    if (term.blocks) {
      for (const auto& pb : term.blocks->party_blocks) summary.blocks_per_party.push_back(pb.count());
      for (const auto& bt : term.blocks->terms) summary.block_weights.emplace_back(block_key(bt.blocks), bt.weight);
    }
    report.terms.push_back(std::move(summary));
  }
  if (report.original_value < 0.0) {
    report.filter = slocc_filter(d, s, f);
  } else {
    report.status = "no violation; filter skipped";
  }
  return report;
}

Json PipelineReport::to_json() const {
  Json terms_json = Json::array();
  for (const auto& t : terms) {
    Json weights = Json::object();
    for (const auto& [key, w] : t.block_weights) weights[key] = w;
    terms_json.push_back({{"mixture_weight", t.mixture_weight},
                          {"reduction_steps", t.reduction_steps},
                          {"residual_weight", t.residual_weight},
                          {"factorized_party", t.factorized_party ? Json(*t.factorized_party + 1) : Json(nullptr)},
                          {"blocks_per_party", t.blocks_per_party},
                          {"block_weights", weights}});
  }
  Json out{{"n_parties", static_cast<int>(dims.size())},
           {"dims", dims},
           {"correlators", std::vector<double>(correlators.values.begin(), correlators.values.end())},
           {"terms", terms_json},
           {"reconstruction_residual", reconstruction_residual},
           {"bell_values", {{"original", original_value}, {"classical_bound", classical_bound}}},
           {"status", status}};
  out["certificate"] = certificate_kind ? Json(*certificate_kind) : Json(nullptr);
  if (filter) {
    out["bell_values"]["best_block"] = filter->filtered_value;
    out["filter"] = bellq::to_json(*filter);
  } else {
    out["bell_values"]["best_block"] = nullptr;
    out["filter"] = nullptr;
  }
  return out;
}

std::string PipelineReport::to_text() const {
  std::ostringstream os;
  os << std::setprecision(12);
  const int n = static_cast<int>(dims.size());
  os << "parties: " << n << "  dims:";
  for (int d : dims) os << ' ' << d;
  os << "\ncorrelators:";
  for (Eigen::Index x = 0; x < correlators.values.size(); ++x) {
    os << "\n  C" << format_labels(static_cast<std::size_t>(x), n) << " = " << correlators.values(x);
  }
  os << "\nclassical certificate: " << certificate_kind.value_or("skipped (LP too large)");
  os << "\nprojective terms: " << terms.size();
  for (std::size_t j = 0; j < terms.size(); ++j) {
    const auto& t = terms[j];
    os << "\n  term " << j << ": weight " << t.mixture_weight << ", " << t.reduction_steps
       << " reduction steps, residual weight " << t.residual_weight;
    if (t.factorized_party) os << ", party " << *t.factorized_party + 1 << " fully factorized";
    if (!t.blocks_per_party.empty()) {
      os << ", blocks per party";
      for (int b : t.blocks_per_party) os << ' ' << b;
      for (const auto& [key, w] : t.block_weights) os << "\n    block (" << key << "): weight " << w;
    }
  }
  os << "\nreconstruction residual: " << reconstruction_residual;
  os << "\nbell value (original): " << original_value;
  os << "\nclassical bound: " << classical_bound;
  if (filter) {
    os << "\nbest block: term " << filter->term << ", blocks (" << block_key(filter->blocks)
       << "), value " << filter->filtered_value << ", success probability "
       << filter->success_probability;
  }
  os << "\nstatus: " << status << '\n';
  return os.str();
}

}  // namespace bellq
