// Copyright 2026 The epirisk Authors
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

#include "epirisk/cli/table.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "epirisk/errors.hpp"

namespace epirisk::cli {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

std::string cell_text(const Cell& c) {
  return std::visit(Overloaded{
                        [](std::monostate) { return std::string(); },
                        [](bool b) { return std::string(b ? "true" : "false"); },
                        [](std::int64_t i) { return std::to_string(i); },
                        [](double d) { return format_number(d); },
                        [](const std::string& s) { return s; },
                    },
                    c);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

nlohmann::ordered_json cell_json(const Cell& c) {
  return std::visit(Overloaded{
                        [](std::monostate) { return nlohmann::ordered_json(nullptr); },
                        [](bool b) { return nlohmann::ordered_json(b); },
                        [](std::int64_t i) { return nlohmann::ordered_json(i); },
                        [](double d) {
                          return std::isfinite(d) ? nlohmann::ordered_json(d) : nlohmann::ordered_json(nullptr);
                        },
                        [](const std::string& s) { return nlohmann::ordered_json(s); },
                    },
                    c);
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("table row width does not match the header");
  }
  rows.push_back(std::move(row));
}

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::kCsv;
  if (name == "json") return Format::kJson;
  throw InputError("unknown output format '" + std::string(name) + "' (csv or json)");
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string to_csv(const Table& table) {
  std::ostringstream os;
  for (std::size_t k = 0; k < table.columns.size(); ++k) {
    if (k > 0) os << ',';
    os << csv_field(table.columns[k]);
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k > 0) os << ',';
      os << csv_field(cell_text(row[k]));
    }
    os << '\n';
  }
  return os.str();
}

std::string to_json(const Table& table) {
  nlohmann::ordered_json doc;
  doc["meta"] = table.meta;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t k = 0; k < row.size(); ++k) obj[table.columns[k]] = cell_json(row[k]);
    doc["rows"].push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

std::string render(const Table& table, Format format) {
  return format == Format::kCsv ? to_csv(table) : to_json(table);
}

}  // namespace epirisk::cli
