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

// Plain CSV without quoting: fields never contain commas or newlines.

#ifndef VINESIM_TOOLS_CSV_H_
#define VINESIM_TOOLS_CSV_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace vinesim::cli {

// Shortest decimal that parses back to the same double; "inf", "-inf",
// "nan" for non-finite values.
std::string FormatDouble(double v);
absl::StatusOr<double> ParseDouble(std::string_view text);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<int> line_numbers;  // 1-based source line of each row
};

// Blank lines are skipped; every row must have as many fields as the header.
absl::StatusOr<CsvTable> ParseCsv(std::string_view text);
absl::StatusOr<CsvTable> ReadCsvFile(const std::string& path);

// Errors name the expected header when it does not match exactly.
absl::Status RequireHeader(const CsvTable& table,
                           const std::vector<std::string>& expected);

std::string FormatCsvRow(const std::vector<std::string>& fields);

// Status carrying the 1-based line number.
absl::Status LineError(int line, absl::string_view what);

}  // namespace vinesim::cli

#endif  // VINESIM_TOOLS_CSV_H_
