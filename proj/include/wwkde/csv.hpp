// Copyright 2026 The wwkde Authors
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
#include <string>
#include <string_view>
#include <vector>

namespace wwkde {

/// Numeric table written as comma-separated text: '.' decimal point, LF
/// line endings, mandatory header, shortest round-trip number formatting
/// (locale independent).
class CsvTable {
 public:
  CsvTable() = default;
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  std::size_t column(std::string_view name) const;

  void add_row(std::vector<double> row);
  std::string to_string() const;
  void write(const std::filesystem::path& path) const;

  /// Parses text; the header row is optional on input (detected by a
  /// non-numeric first field). Missing headers become x_1..x_k.
  static CsvTable parse(std::string_view text);
  static CsvTable read(const std::filesystem::path& path);

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

/// Shortest text that parses back to exactly `value`; "inf", "-inf", "nan"
/// for non-finite values.
std::string format_double(double value);

void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace wwkde
