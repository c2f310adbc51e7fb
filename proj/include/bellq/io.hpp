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

// JSON documents read and written by the command-line tool. Matrices are flat
// row-major lists of [re, im] pairs; behavior and functional tables use the
// index(x)·2^N + index(a) layout.

#ifndef BELLQ_IO_HPP_
#define BELLQ_IO_HPP_

#include <string>

#include <json.hpp>

#include "bellq/classical.hpp"
#include "bellq/compression.hpp"
#include "bellq/seesaw.hpp"

namespace bellq {

using Json = nlohmann::json;

/// Throws ValidationError with the byte offset on malformed input.
Json parse_json(const std::string& text, const std::string& source);
Json read_json_file(const std::string& path);

Json to_json(const Behavior& b);
Behavior behavior_from_json(const Json& j);

Json to_json(const BellFunctional& f);
BellFunctional functional_from_json(const Json& j);

Json matrix_to_json(const CMatrix& m);
/// Square matrix of side `dim` at JSON path `path`.
CMatrix matrix_from_json(const Json& j, Eigen::Index dim, const std::string& path);
Json vector_to_json(const CVector& v);

Json to_json(const QuantumStrategy& s);
QuantumStrategy strategy_from_json(const Json& j);

Json to_json(const LpCertificate& c);
Json to_json(const StrategyMixture& m);
Json to_json(const ReductionResult& r);
Json to_json(const BlockDecomposition& d);
Json to_json(const SloccFilter& f);
Json to_json(const SeesawResult& r);

/// "1,2,1" style key for a 0-based block index vector.
std::string block_key(const std::vector<int>& blocks);

}  // namespace bellq

#endif  // BELLQ_IO_HPP_
