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

#ifndef BELLQ_TOOLS_CLI_HPP_
#define BELLQ_TOOLS_CLI_HPP_

#include <iosfwd>

namespace bellq {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitPrecondition = 3,
  kExitInternal = 4,
};

/// Runs the command line; JSON documents go to --out or `out`, diagnostics to
/// `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bellq

#endif  // BELLQ_TOOLS_CLI_HPP_
