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

#ifndef EPIRISK_CLI_TABLE_HPP_
#define EPIRISK_CLI_TABLE_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

namespace epirisk::cli {

using Cell = std::variant<std::monostate, bool, std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();

  void add_row(std::vector<Cell> row);
};

enum class Format { kCsv, kJson };
Format parse_format(std::string_view name);  // InputError on unknown names

// Shortest decimal that reads back to the same double; "nan", "inf", "-inf"
// for non-finite values. Locale independent.
std::string format_number(double v);

// Header line, then one line per row. Fields containing a comma, quote or
// line break are quoted with inner quotes doubled. Empty cells are empty.
std::string to_csv(const Table& table);

// {"meta": {...}, "rows": [{column: value, ...}, ...]}; NaN becomes null.
std::string to_json(const Table& table);

std::string render(const Table& table, Format format);

}  // namespace epirisk::cli

#endif  // EPIRISK_CLI_TABLE_HPP_
