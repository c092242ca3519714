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

// Scenario files: robot, environment, simulation settings and a command
// script, as JSON in boundary units (mm, kPa, g, deg).
//
//   {
//     "name": "gap",
//     "robot": {"radius_mm": 16, "segments": [{"length_mm": 100}],
//               "material": {...}, "jamming": {"k_n": 2, "mu": 0.3}},
//     "environment": {"obstacles": [[[x, y], ...]], "gaps": [...],
//                     "masses": [...], "targets": [[x, y]]},
//     "script": [{"type": "SetPressure", "kpa": 20},
//                {"type": "Grow", "mm": 250}]
//   }
//
// Schema errors are InvalidArgument with a message "at <json-pointer>: ...".

#ifndef VINESIM_SCENARIO_H_
#define VINESIM_SCENARIO_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"
#include "vinesim/growsim.h"
#include "vinesim/model.h"

namespace vinesim {

struct FpamBaseline {
  FpamSpec fpam;
  std::vector<double> body_pressures = {10e3, 20e3, 30e3};  // Pa
};

struct Scenario {
  std::string name;
  RobotSpec robot;
  Environment env;
  SimConfig config;
  FpamBaseline fpam;
  // xmin, ymin, xmax, ymax in m.
  std::optional<std::array<double, 4>> bounds;
  std::vector<Command> script;
};

absl::StatusOr<Scenario> ParseScenario(const nlohmann::json& doc);
absl::StatusOr<Scenario> ParseScenarioText(std::string_view text);
absl::StatusOr<Scenario> LoadScenarioFile(const std::string& path);

// A single script/wire command such as {"type": "Grow", "mm": 5}.
absl::StatusOr<Command> ParseCommand(const nlohmann::json& doc,
                                     std::string_view path = "");
nlohmann::json CommandToJson(const Command& command);

// JSON pointer of the offending key in a schema error, or "".
std::string SchemaErrorPath(const absl::Status& status);

// Scenarios compiled into the library.
std::vector<std::string> BundledScenarioNames();
std::optional<std::string_view> BundledScenarioText(std::string_view name);
absl::StatusOr<Scenario> LoadBundledScenario(std::string_view name);

// Resolves a bundled scenario name or a file path.
absl::StatusOr<Scenario> ResolveScenario(const std::string& name_or_path);

}  // namespace vinesim

#endif  // VINESIM_SCENARIO_H_
