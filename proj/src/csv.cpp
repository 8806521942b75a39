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

#include "wwkde/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "wwkde/error.hpp"

namespace wwkde {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    auto field = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) field.remove_suffix(1);
    out.push_back(field);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool parse_double(std::string_view field, double& out) {
  if (field == "inf" || field == "+inf") return out = INFINITY, true;
  if (field == "-inf") return out = -INFINITY, true;
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  const auto* end = field.data() + field.size();
  const auto result = std::from_chars(field.data(), end, out);
  return result.ec == std::errc() && result.ptr == end;
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header_.size(); ++i)
    if (header_[i] == name) return i;
  throw ConfigError("CSV has no column '" + std::string(name) + "'");
}

void CsvTable::add_row(std::vector<double> row) {
  require(row.size() == header_.size(), "CSV row length differs from the header");
  rows_.push_back(std::move(row));
}

std::string CsvTable::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i) out += ',';
    out += header_[i];
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

void CsvTable::write(const std::filesystem::path& path) const {
  write_text_file(path, to_string());
}

CsvTable CsvTable::parse(std::string_view text) {
  CsvTable table;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    auto line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    std::vector<double> row(fields.size());
    bool numeric = true;
    for (std::size_t i = 0; i < fields.size() && numeric; ++i)
      numeric = parse_double(fields[i], row[i]);
    if (!numeric) {
      if (table.header_.empty() && table.rows_.empty()) {
        for (auto f : fields) table.header_.emplace_back(f);
        continue;
      }
      throw ConfigError("CSV line " + std::to_string(line_no) + " is not numeric");
    }
    if (table.header_.empty()) {
      for (std::size_t i = 0; i < row.size(); ++i)
        table.header_.push_back("x_" + std::to_string(i + 1));
    }
    if (row.size() != table.header_.size())
      throw ConfigError("CSV line " + std::to_string(line_no) + " has " +
                        std::to_string(row.size()) + " fields, expected " +
                        std::to_string(table.header_.size()));
    table.rows_.push_back(std::move(row));
  }
  return table;
}

CsvTable CsvTable::read(const std::filesystem::path& path) {
  return parse(read_text_file(path));
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw ConfigError("failed writing '" + path.string() + "'");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace wwkde
