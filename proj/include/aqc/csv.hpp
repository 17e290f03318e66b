// Copyright 2026 The aqc-chain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace aqc::csv {

// Fixed 12-significant-digit rendering ("%.12g"); byte-stable across runs.
std::string format_real(double value);

// Parses a value written by format_real; throws std::invalid_argument.
double parse_real(std::string_view text);
long long parse_integer(std::string_view text);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Reads a comma-separated file; the first line is the header. Rows are kept
// verbatim even when their width differs from the header (histogram
// footers). Throws std::runtime_error if the file cannot be opened.
Table read_table(const std::filesystem::path& path);

std::vector<std::string> split(std::string_view line, char sep = ',');

}  // namespace aqc::csv
