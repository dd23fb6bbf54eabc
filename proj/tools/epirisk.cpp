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

// epirisk command line. Every subcommand reads a YAML parameter file
// (--params) plus --set overrides and writes one CSV or JSON table.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "epirisk/cli/commands.hpp"
#include "epirisk/errors.hpp"

namespace {

struct Flags {
  std::string params;
  std::string out;
  std::string format;
  std::string seed;
  std::string regime;
  bool include_unstable = false;
  std::vector<std::string> sets;
};

const char* describe(const std::string& name) {
  if (name == "lmf-solve") return "Solve the mean-field recursion over a grid of gamma";
  if (name == "equilibria") return "List Nash equilibria, social optimum and price of anarchy";
  if (name == "adoption-curve") return "Equilibria over (q-, c/l) with stability branches";
  if (name == "poa-curve") return "Price of anarchy against the cost ratio";
  if (name == "validate") return "Compare simulation with the mean-field or exact values";
  if (name == "tipping") return "Seeding threshold and best-response trajectories";
  if (name == "simulate") return "Monte Carlo epidemics on a loaded or generated graph";
  if (name == "gen-graph") return "Write a generated graph as an edge list";
  return "";
}

epirisk::cli::Config build_config(const Flags& f) {
  epirisk::cli::Config cfg =
      f.params.empty() ? epirisk::cli::Config() : epirisk::cli::Config::load(f.params);
  // flags win over the file
  for (const auto& s : f.sets) cfg.set(s);
  if (!f.seed.empty()) cfg.set("run", "seed", f.seed);
  if (!f.regime.empty()) cfg.set("run", "case", f.regime);
  if (!f.format.empty()) cfg.set("run", "format", f.format);
  if (f.include_unstable) cfg.set("game", "include_unstable", "true");
  return cfg;
}

int run(const std::string& name, const Flags& flags) {
  using namespace epirisk::cli;
  try {
    const Config cfg = build_config(flags);
    const Format format = parse_format(cfg.text("run", "format", "csv"));
    const CommandResult res = run_command(name, cfg);
    const std::string body = res.raw ? *res.raw : render(res.table, format);
    if (flags.out.empty()) {
      std::cout << body;
    } else {
      std::ofstream out(flags.out);
      if (!out || !(out << body)) throw epirisk::InputError("cannot write " + flags.out);
    }
    return res.exit_code;
  } catch (...) {
    std::string message;
    const int code = exit_code_for_current_exception(message);
    std::cerr << "epirisk " << name << ": " << message << "\n";
    return code;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Security investment games on random networks"};
  app.require_subcommand(1);
  Flags flags;
  std::string chosen;
  for (const auto& name : epirisk::cli::command_names()) {
    CLI::App* sub = app.add_subcommand(name, describe(name));
    sub->add_option("--params", flags.params, "YAML parameter file")->check(CLI::ExistingFile);
    sub->add_option("--out", flags.out, "output path (default stdout)");
    sub->add_option("--format", flags.format, "csv or json");
    sub->add_option("--seed", flags.seed, "master seed");
    sub->add_option("--case", flags.regime, "strong, weak or general");
    sub->add_flag("--include-unstable", flags.include_unstable,
                  "count unstable interior equilibria in the price of anarchy");
    sub->add_option("--set", flags.sets, "override, section.key=value (repeatable)");
    sub->callback([&chosen, name] { chosen = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : epirisk::cli::kExitConfigError;
  }
  return run(chosen, flags);
}
