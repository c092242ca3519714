// Copyright 2026 The vinesim Authors
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

// The vinesim command line: fit, sweep, simulate, plan, serve.

#ifndef VINESIM_TOOLS_CLI_H_
#define VINESIM_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

#include "absl/status/status.h"

namespace vinesim::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 2,
  kExitNoPlan = 3,  // also: a simulated target was not reached
  kExitSolverFailure = 4,
};

// Internal errors come from the solvers; everything else is bad input.
int ExitCodeFor(const absl::Status& status);

// Runs the tool with argv-style arguments (args[0] is the program name).
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace vinesim::cli

#endif  // VINESIM_TOOLS_CLI_H_
