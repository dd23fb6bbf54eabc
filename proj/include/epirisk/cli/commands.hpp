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

#ifndef EPIRISK_CLI_COMMANDS_HPP_
#define EPIRISK_CLI_COMMANDS_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "epirisk/cli/config.hpp"
#include "epirisk/cli/table.hpp"
#include "epirisk/game.hpp"
#include "epirisk/lmf.hpp"

namespace epirisk::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericError = 3;

struct CommandResult {
  Table table;
  int exit_code = kExitOk;
  // Written verbatim instead of the table (gen-graph edge lists).
  std::optional<std::string> raw;
};

// Builders shared by the commands. Parameter errors surface as InputError
// naming the offending key.
EpidemicParams model_from(const Config& cfg);
AgentEconomy economy_from(const Config& cfg);
CostModel cost_from(const Config& cfg, double loss);
GameOptions game_options_from(const Config& cfg);

CommandResult cmd_lmf_solve(const Config& cfg);
CommandResult cmd_equilibria(const Config& cfg);
CommandResult cmd_adoption_curve(const Config& cfg);
CommandResult cmd_poa_curve(const Config& cfg);
CommandResult cmd_validate(const Config& cfg);
CommandResult cmd_tipping(const Config& cfg);
CommandResult cmd_simulate(const Config& cfg);
CommandResult cmd_gen_graph(const Config& cfg);

std::vector<std::string> command_names();

// Runs a subcommand and then rejects unknown keys in the sections it read.
CommandResult run_command(std::string_view name, const Config& cfg);

// Maps an in-flight exception to an exit code and message.
int exit_code_for_current_exception(std::string& message);

}  // namespace epirisk::cli

#endif  // EPIRISK_CLI_COMMANDS_HPP_
