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

#include "bellq/io.hpp"

#include <fstream>
#include <sstream>

namespace bellq {

namespace {

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) {
    throw StructuralError("missing field " + path + "/" + key);
  }
  return j.at(key);
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw StructuralError("expected a number at " + path);
  return j.get<double>();
}

RVector real_list(const Json& j, const std::string& path) {
  if (!j.is_array()) throw StructuralError("expected an array at " + path);
  RVector out(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) out(i) = number(j[i], path + "/" + std::to_string(i));
  return out;
}

int parties_of(const Json& j) {
  const Json& n = field(j, "n_parties", "");
  if (!n.is_number_integer()) throw StructuralError("n_parties must be an integer");
  return n.get<int>();
}

std::complex<double> complex_from(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw StructuralError("expected [re, im] at " + path);
  return {number(j[0], path + "/0"), number(j[1], path + "/1")};
}

Json columns_to_json(const CMatrix& m) {
  Json cols = Json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) cols.push_back(vector_to_json(m.col(c)));
  return cols;
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::ostringstream os;
    os << source << ": malformed JSON at byte " << e.byte << ": " << e.what();
    throw ValidationError(os.str());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path);
}

Json to_json(const Behavior& b) {
  return {{"n_parties", b.scenario().parties()},
          {"probabilities", std::vector<double>(b.table().begin(), b.table().end())}};
}

Behavior behavior_from_json(const Json& j) {
  return Behavior(Scenario(parties_of(j)), real_list(field(j, "probabilities", ""), "/probabilities"));
}

Json to_json(const BellFunctional& f) {
  return {{"n_parties", f.scenario().parties()},
          {"coefficients", std::vector<double>(f.coefficients().begin(), f.coefficients().end())}};
}

BellFunctional functional_from_json(const Json& j) {
  return BellFunctional(Scenario(parties_of(j)), real_list(field(j, "coefficients", ""), "/coefficients"));
}

Json matrix_to_json(const CMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back({m(r, c).real(), m(r, c).imag()});
  return out;
}

Json vector_to_json(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

CMatrix matrix_from_json(const Json& j, Eigen::Index dim, const std::string& path) {
  if (!j.is_array()) throw StructuralError("expected a matrix at " + path);
  if (static_cast<Eigen::Index>(j.size()) != dim * dim) {
    std::ostringstream os;
    os << "matrix at " << path << " has " << j.size() << " entries, expected " << dim * dim;
    throw StructuralError(os.str());
  }
  CMatrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      const auto k = static_cast<std::size_t>(r * dim + c);
      m(r, c) = complex_from(j[k], path + "/" + std::to_string(k));
    }
  }
  return m;
}

Json to_json(const QuantumStrategy& s) {
  Json ms = Json::array();
  for (const auto& m : s.measurements) {
    Json settings = Json::array();
    for (int x = 0; x < 2; ++x) settings.push_back({matrix_to_json(m(x, 0)), matrix_to_json(m(x, 1))});
    ms.push_back(settings);
  }
  return {{"dims", s.dims}, {"state", matrix_to_json(s.state)}, {"measurements", ms}};
}

QuantumStrategy strategy_from_json(const Json& j) {
  QuantumStrategy s;
  const Json& dims = field(j, "dims", "");
  if (!dims.is_array() || dims.empty()) throw StructuralError("dims must be a non-empty array");
  for (const auto& d : dims) {
    if (!d.is_number_integer() || d.get<int>() < 1) throw StructuralError("dims must be positive integers");
    s.dims.push_back(d.get<int>());
  }
  if (product(s.dims) > kMaxTotalDim) throw ResourceError("total dimension exceeds the limit");
  s.state = matrix_from_json(field(j, "state", ""), static_cast<Eigen::Index>(product(s.dims)), "/state");
  const Json& ms = field(j, "measurements", "");
  if (!ms.is_array() || ms.size() != s.dims.size()) {
    throw StructuralError("measurements must list one entry per party");
  }
  for (std::size_t n = 0; n < ms.size(); ++n) {
    const std::string base = "/measurements/" + std::to_string(n);
    if (!ms[n].is_array() || ms[n].size() != 2) throw StructuralError(base + " must hold two settings");
    LocalMeasurement m;
    m.dim = s.dims[n];
    for (std::size_t x = 0; x < 2; ++x) {
      const std::string sbase = base + "/" + std::to_string(x);
      if (!ms[n][x].is_array() || ms[n][x].size() != 2) throw StructuralError(sbase + " must hold two outcomes");
      for (std::size_t a = 0; a < 2; ++a) {
        m.effects[x][a] = matrix_from_json(ms[n][x][a], m.dim, sbase + "/" + std::to_string(a));
      }
    }
    s.measurements.push_back(std::move(m));
  }
  return s;
}

Json to_json(const LpCertificate& c) {
  Json out{{"kind", c.member() ? "member" : "non_member"}, {"slack", c.slack}};
  if (c.member()) {
    Json weights = Json::array();
    for (auto [vertex, w] : c.weights) weights.push_back({{"vertex", vertex}, {"weight", w}});
    out["weights"] = weights;
  } else {
    out["separating_functional"] = to_json(*c.separating_functional);
  }
  return out;
}

Json to_json(const StrategyMixture& m) {
  Json strategies = Json::array();
  for (const auto& s : m.strategies) strategies.push_back(to_json(s));
  return {{"weights", m.weights}, {"strategies", strategies}};
}

Json to_json(const ReductionResult& r) {
  Json steps = Json::array();
  for (const auto& step : r.steps) {
    Json js{{"party", step.party + 1},
            {"removed_vector", vector_to_json(step.removed_vector)},
            {"factor_weight", step.factor_weight},
            {"absolute_weight", step.absolute_weight},
            {"factor_outcomes", {step.factor_outcomes[0], step.factor_outcomes[1]}}};
    if (step.reduced_strategy) js["reduced_dims"] = step.reduced_strategy->dims;
    steps.push_back(js);
  }
  Json out{{"steps", steps}, {"residual_weight", r.residual_weight}};
  out["reduced"] = r.reduced ? to_json(*r.reduced) : Json(nullptr);
  out["factorized_party"] = r.factorized_party ? Json(*r.factorized_party + 1) : Json(nullptr);
  return out;
}

std::string block_key(const std::vector<int>& blocks) {
  std::ostringstream os;
  for (std::size_t n = 0; n < blocks.size(); ++n) os << (n ? "," : "") << blocks[n] + 1;
  return os.str();
}

Json to_json(const BlockDecomposition& d) {
  Json parties = Json::array();
  for (const auto& pb : d.party_blocks) {
    Json blocks = Json::array();
    for (const auto& b : pb.blocks) {
      blocks.push_back({{"frame", columns_to_json(b.frame)},
                        {"angle", b.angle},
                        {"g_eigenvalue", b.g_eigenvalue}});
    }
    parties.push_back({{"party", pb.party + 1}, {"blocks", blocks}});
  }
  Json weights = Json::object();
  Json strategies = Json::object();
  for (const auto& t : d.terms) {
    weights[block_key(t.blocks)] = t.weight;
    if (t.qubit_strategy) strategies[block_key(t.blocks)] = to_json(*t.qubit_strategy);
  }
  return {{"blocks", parties},
          {"weights", weights},
          {"qubit_strategies", strategies},
          {"reconstruction_residual", d.reconstruction_residual}};
}

Json to_json(const SloccFilter& f) {
  Json projectors = Json::array();
  for (const auto& x : f.projectors) projectors.push_back(matrix_to_json(x));
  Json candidates = Json::array();
  for (const auto& c : f.candidates) {
    candidates.push_back({{"term", c.term}, {"blocks", block_key(c.blocks)}, {"weight", c.weight}, {"value", c.value}});
  }
  Json out{{"projectors", projectors},
           {"success_probability", f.success_probability},
           {"filtered_state", matrix_to_json(f.filtered_state)},
           {"qubit_strategy", to_json(f.qubit_strategy)},
           {"bell_values", {{"original", f.original_value}, {"filtered", f.filtered_value}}},
           {"term", f.term},
           {"blocks", block_key(f.blocks)},
           {"candidates", candidates}};
  out["best_factor_value"] = f.best_factor_value ? Json(*f.best_factor_value) : Json(nullptr);
  return out;
}

Json to_json(const SeesawResult& r) {
  return {{"best_value", r.best_value},
          {"best_strategy", to_json(r.best_strategy)},
          {"per_restart_values", r.per_restart_values},
          {"rounds_used", r.rounds_used},
          {"converged", r.converged}};
}

}  // namespace bellq
