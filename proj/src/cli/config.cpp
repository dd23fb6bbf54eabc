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

#include "epirisk/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "epirisk/errors.hpp"

namespace epirisk::cli {
namespace {

const std::set<std::string>& known_sections() {
  static const std::set<std::string> names = {
      "run",   "model",    "economy",  "cost",    "game",     "lmf",   "adoption",
      "poa",   "validate", "tipping",  "simulate", "graph",
  };
  return names;
}

std::string dotted(const std::string& section, const std::string& key) {
  return section + "." + key;
}

double to_double(const YAML::Node& node, bool& ok) {
  ok = false;
  if (!node.IsScalar()) return 0.0;
  try {
    const double v = node.as<double>();
    ok = std::isfinite(v);
    return v;
  } catch (const YAML::Exception&) {
    return 0.0;
  }
}

}  // namespace

Config::Config() : root_(YAML::NodeType::Map), source_("<defaults>") {}

Config Config::parse(const std::string& text, const std::string& source) {
  Config cfg;
  cfg.source_ = source;
  try {
    YAML::Node root = YAML::Load(text);
    if (root.IsNull()) return cfg;
    if (!root.IsMap()) throw InputError(source + ": top level must be a mapping of sections");
    for (const auto& kv : root) {
      const auto name = kv.first.as<std::string>();
      const int line = kv.first.Mark().line + 1;
      if (!known_sections().count(name)) {
        std::ostringstream os;
        os << source << ":" << line << ": unknown section '" << name << "'";
        throw InputError(os.str());
      }
      if (!kv.second.IsMap()) {
        std::ostringstream os;
        os << source << ":" << line << ": section '" << name << "' must be a mapping";
        throw InputError(os.str());
      }
    }
    cfg.root_ = root;
  } catch (const YAML::Exception& e) {
    std::ostringstream os;
    os << source << ":" << e.mark.line + 1 << ": " << e.msg;
    throw InputError(os.str());
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path);
}

void Config::set(std::string_view assignment) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string_view::npos || dot == std::string_view::npos || dot > eq || dot == 0 ||
      eq == dot + 1) {
    throw InputError("--set expects section.key=value, got '" + std::string(assignment) + "'");
  }
  set(std::string(assignment.substr(0, dot)), std::string(assignment.substr(dot + 1, eq - dot - 1)),
      std::string(assignment.substr(eq + 1)));
}

void Config::set(const std::string& section, const std::string& key,
                 const std::string& yaml_value) {
  if (!known_sections().count(section)) {
    throw InputError("--set " + dotted(section, key) + ": unknown section '" + section + "'");
  }
  YAML::Node value;
  try {
    value = YAML::Load(yaml_value);
  } catch (const YAML::Exception&) {
    value = YAML::Node(yaml_value);
  }
  if (!root_[section] || !root_[section].IsMap()) root_[section] = YAML::Node(YAML::NodeType::Map);
  root_[section][key] = value;
  overrides_[dotted(section, key)] = "--set " + dotted(section, key);
}

bool Config::has(const std::string& section, const std::string& key) const {
  const YAML::Node& root = root_;
  const YAML::Node s = root[section];
  return s && s.IsMap() && s[key] && !s[key].IsNull();
}

YAML::Node Config::get(const std::string& section, const std::string& key) const {
  used_.insert(dotted(section, key));
  if (!has(section, key)) return YAML::Node(YAML::NodeType::Undefined);
  const YAML::Node& root = root_;
  return root[section][key];
}

std::string Config::where(const std::string& section, const std::string& key) const {
  const auto it = overrides_.find(dotted(section, key));
  if (it != overrides_.end()) return it->second;
  if (has(section, key)) {
    const YAML::Node& root = root_;
    std::ostringstream os;
    os << source_ << ":" << root[section][key].Mark().line + 1 << ": " << dotted(section, key);
    return os.str();
  }
  return dotted(section, key);
}

void Config::fail(const std::string& section, const std::string& key,
                  const std::string& message) const {
  throw InputError(where(section, key) + ": " + message);
}

double Config::number(const std::string& section, const std::string& key,
                      double fallback) const {
  const YAML::Node n = get(section, key);
  if (!n) return fallback;
  bool ok = false;
  const double v = to_double(n, ok);
  if (!ok) fail(section, key, "expected a finite number");
  return v;
}

std::int64_t Config::integer(const std::string& section, const std::string& key,
                             std::int64_t fallback) const {
  const YAML::Node n = get(section, key);
  if (!n) return fallback;
  bool ok = false;
  const double v = to_double(n, ok);
  if (!ok || v != std::floor(v) || std::abs(v) > 9.0e15) fail(section, key, "expected an integer");
  return static_cast<std::int64_t>(v);
}

bool Config::boolean(const std::string& section, const std::string& key, bool fallback) const {
  const YAML::Node n = get(section, key);
  if (!n) return fallback;
  try {
    return n.as<bool>();
  } catch (const YAML::Exception&) {
    fail(section, key, "expected true or false");
  }
}

std::string Config::text(const std::string& section, const std::string& key,
                         const std::string& fallback) const {
  const YAML::Node n = get(section, key);
  if (!n) return fallback;
  if (!n.IsScalar()) fail(section, key, "expected a string");
  return n.as<std::string>();
}

std::vector<double> Config::numbers(const std::string& section, const std::string& key,
                                    std::vector<double> fallback) const {
  const YAML::Node n = get(section, key);
  if (!n) return fallback;
  if (!n.IsSequence()) fail(section, key, "expected a list of numbers");
  std::vector<double> out;
  for (const auto& item : n) {
    bool ok = false;
    out.push_back(to_double(item, ok));
    if (!ok) fail(section, key, "expected a list of finite numbers");
  }
  return out;
}

void Config::check_unused() const {
  // only sections the command read from; other sections may belong to other
  // commands sharing the file
  std::set<std::string> touched;
  for (const auto& k : used_) touched.insert(k.substr(0, k.find('.')));
  for (const auto& kv : root_) {
    const auto section = kv.first.as<std::string>();
    if (!touched.count(section)) continue;
    for (const auto& entry : kv.second) {
      const auto key = entry.first.as<std::string>();
      if (!used_.count(dotted(section, key))) fail(section, key, "unknown key");
    }
  }
}

double node_number(const Config& cfg, const std::string& section, const std::string& key,
                   const YAML::Node& node, const std::string& field, double fallback) {
  const YAML::Node v = node[field];
  if (!v) return fallback;
  bool ok = false;
  const double x = to_double(v, ok);
  if (!ok) cfg.fail(section, key, "field '" + field + "' must be a finite number");
  return x;
}

}  // namespace epirisk::cli
