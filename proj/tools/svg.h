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

#ifndef VINESIM_TOOLS_SVG_H_
#define VINESIM_TOOLS_SVG_H_

#include <string>
#include <vector>

namespace vinesim::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;  // non-finite values break the line
};

struct ChartOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 640;
  int height = 400;
};

// Minimal standalone SVG line chart with axes, ticks and a legend.
std::string LineChartSvg(const std::vector<Series>& series,
                         const ChartOptions& options);

}  // namespace vinesim::cli

#endif  // VINESIM_TOOLS_SVG_H_
