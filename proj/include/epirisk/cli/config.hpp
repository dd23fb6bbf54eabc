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

// Experiment configuration: a YAML mapping of sections, each a mapping of
// keys to values.
//
//   model:
//     p_plus: 0.01
//     degree: {kind: poisson, lambda: 10}
//   cost:
//     ratio: 0.3
//
// Every lookup records the key as used; keys nobody asked for are reported
// by check_unused() so a typo cannot silently fall back to a default. All
// errors are InputError carrying the file, line and key.

#ifndef EPIRISK_CLI_CONFIG_HPP_
#define EPIRISK_CLI_CONFIG_HPP_

#include <yaml-cpp/yaml.h>

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace epirisk::cli {

class Config {
 public:
  Config();

  static Config parse(const std::string& text, const std::string& source = "<config>");
  static Config load(const std::string& path);

  // "section.key=value" with the value read as YAML ("0.3", "[0, 0.5]",
  // "{kind: regular, degree: 3}"). Later assignments win.
  void set(std::string_view assignment);
  void set(const std::string& section, const std::string& key, const std::string& yaml_value);

  bool has(const std::string& section, const std::string& key) const;

  // Null node when absent. Marks the key as used.
  YAML::Node get(const std::string& section, const std::string& key) const;

  double number(const std::string& section, const std::string& key, double fallback) const;
  std::int64_t integer(const std::string& section, const std::string& key,
                       std::int64_t fallback) const;
  bool boolean(const std::string& section, const std::string& key, bool fallback) const;
  std::string text(const std::string& section, const std::string& key,
                   const std::string& fallback) const;
  std::vector<double> numbers(const std::string& section, const std::string& key,
                              std::vector<double> fallback) const;

  // "file:line: section.key" or "--set section.key".
  std::string where(const std::string& section, const std::string& key) const;
  [[noreturn]] void fail(const std::string& section, const std::string& key,
                         const std::string& message) const;

  void check_unused() const;

  const std::string& source() const { return source_; }

 private:
  YAML::Node root_;
  std::string source_;
  std::map<std::string, std::string> overrides_;  // "section.key" -> origin
  mutable std::set<std::string> used_;
};

// Typed reads from an inline mapping such as a degree law or utility.
double node_number(const Config& cfg, const std::string& section, const std::string& key,
                   const YAML::Node& node, const std::string& field, double fallback);

}  // namespace epirisk::cli

#endif  // EPIRISK_CLI_CONFIG_HPP_
