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

#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "bellq/pipeline.hpp"

namespace bellq {

namespace {

struct CommonFlags {
  std::string out_path;
  std::uint64_t seed = kDefaultSeed;
  bool tol_report = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--out", flags.out_path, "Write the JSON result to this file");
  cmd->add_option("--seed", flags.seed, "Seed for randomized steps");
  cmd->add_flag("--tol-report", flags.tol_report, "Print residuals to stderr");
}

void emit(const Json& doc, const CommonFlags& flags, std::ostream& out) {
  if (flags.out_path.empty()) {
    out << doc.dump(2) << '\n';
    return;
  }
  std::ofstream file(flags.out_path);
  if (!file) throw ValidationError("cannot write " + flags.out_path);
  file << doc.dump(2) << '\n';
}

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      dims.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ValidationError("bad dimension list: " + text);
    }
  }
  if (dims.empty()) throw ValidationError("empty dimension list");
  return dims;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"bellq: Bell scenarios with two dichotomic settings per party"};
  app.require_subcommand(1);
  CommonFlags flags;
  std::string strategy_path, functional_path, behavior_path, dims_text = "2,2";
  bool mixed = false, povm = false;
  SeesawConfig seesaw_cfg;
  std::string seesaw_dims;

  auto* evaluate = app.add_subcommand("evaluate", "Born-rule behavior of a strategy");
  evaluate->add_option("strategy,--strategy", strategy_path)->required();
  add_common(evaluate, flags);

  auto* classify = app.add_subcommand("classify", "Local-polytope membership certificate");
  classify->add_option("behavior,--behavior", behavior_path)->required();
  add_common(classify, flags);

  auto* projectivize_cmd = app.add_subcommand("projectivize", "Split POVMs into projective measurements");
  projectivize_cmd->add_option("strategy,--strategy", strategy_path)->required();
  add_common(projectivize_cmd, flags);

  auto* reduce = app.add_subcommand("reduce", "Strip vectors shared between effect ranges");
  reduce->add_option("strategy,--strategy", strategy_path)->required();
  add_common(reduce, flags);

  auto* compress_cmd = app.add_subcommand("compress", "Decompose into N-qubit blocks");
  compress_cmd->add_option("strategy,--strategy", strategy_path)->required();
  add_common(compress_cmd, flags);

  auto* filter = app.add_subcommand("filter", "Rank-2 local filter keeping the strongest violation");
  filter->add_option("--strategy", strategy_path)->required();
  filter->add_option("--functional", functional_path)->required();
  add_common(filter, flags);

  auto* optimize = app.add_subcommand("optimize", "See-saw maximization of the violation");
  optimize->add_option("functional,--functional", functional_path)->required();
  optimize->add_option("--restarts", seesaw_cfg.restarts);
  optimize->add_option("--max-rounds", seesaw_cfg.max_rounds);
  optimize->add_option("--tol", seesaw_cfg.convergence_tol);
  optimize->add_option("--dims", seesaw_dims, "Local dimensions, comma separated (default qubits)");
  add_common(optimize, flags);

  auto* pipeline = app.add_subcommand("pipeline", "Full chain with a readable report");
  pipeline->add_option("--strategy", strategy_path)->required();
  pipeline->add_option("--functional", functional_path)->required();
  add_common(pipeline, flags);

  auto* random = app.add_subcommand("random", "Generate a random strategy");
  random->add_option("--dims", dims_text, "Local dimensions, comma separated");
  random->add_flag("--mixed", mixed, "Full-rank mixed state instead of a pure state");
  random->add_flag("--povm", povm, "Non-projective measurements");
  add_common(random, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*evaluate) {
      const QuantumStrategy s = strategy_from_json(read_json_file(strategy_path));
      emit(to_json(born_behavior(s)), flags, out);
    } else if (*classify) {
      const Behavior b = behavior_from_json(read_json_file(behavior_path));
      emit(to_json(is_classical(b)), flags, out);
    } else if (*projectivize_cmd) {
      const QuantumStrategy s = strategy_from_json(read_json_file(strategy_path));
      const StrategyMixture m = projectivize_strategy(s);
      if (flags.tol_report) {
        err << "behavior residual: " << max_residual(mixture_behavior(m), born_behavior(s)) << '\n';
      }
      emit(to_json(m), flags, out);
    } else if (*reduce) {
      const QuantumStrategy s = strategy_from_json(read_json_file(strategy_path));
      const ReductionResult r = strip_shared_vectors(s);
      if (flags.tol_report) err << "behavior residual: " << max_residual(r.reconstruct(), born_behavior(s)) << '\n';
      emit(to_json(r), flags, out);
    } else if (*compress_cmd) {
      const QuantumStrategy s = strategy_from_json(read_json_file(strategy_path));
      const BlockDecomposition d = compress(s);
      if (flags.tol_report) err << "reconstruction residual: " << d.reconstruction_residual << '\n';
      emit(to_json(d), flags, out);
    } else if (*filter) {
      const QuantumStrategy s = strategy_from_json(read_json_file(strategy_path));
      const BellFunctional f = functional_from_json(read_json_file(functional_path));
      const SloccFilter result = slocc_filter(s, f);
      if (flags.tol_report) {
        err << "original " << result.original_value << ", filtered " << result.filtered_value << '\n';
      }
      emit(to_json(result), flags, out);
    } else if (*optimize) {
      const BellFunctional f = functional_from_json(read_json_file(functional_path));
      seesaw_cfg.seed = flags.seed;
      if (!seesaw_dims.empty()) seesaw_cfg.local_dims = parse_dims(seesaw_dims);
      const SeesawResult r = seesaw(f, seesaw_cfg);
      if (flags.tol_report) {
        const double check = bell_value(f, born_behavior(r.best_strategy));
        err << "consistency residual: " << std::abs(check - r.best_value) << '\n';
      }
      emit(to_json(r), flags, out);
    } else if (*pipeline) {
      const QuantumStrategy s = strategy_from_json(read_json_file(strategy_path));
      const BellFunctional f = functional_from_json(read_json_file(functional_path));
      const PipelineReport report = run_pipeline(s, f);
      out << report.to_text();
      if (!flags.out_path.empty()) emit(report.to_json(), flags, out);
    } else if (*random) {
      emit(to_json(random_strategy(parse_dims(dims_text), !mixed, !povm, flags.seed)), flags, out);
    }
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const PreconditionError& e) {
    err << "precondition error: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const InternalError& e) {
    err << "internal consistency failure: " << e.what() << '\n';
    return kExitInternal;
  } catch (const Json::exception& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace bellq
