// Copyright 2026 The Coretag Authors.
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

#ifndef CORETAG_TOOLS_CLI_COMMANDS_H_
#define CORETAG_TOOLS_CLI_COMMANDS_H_

#include <filesystem>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli/config.h"

namespace coretag::cli {

struct FlagSpec {
  std::string name;  // e.g. "--corpus"
  std::string key;   // config key it sets
  std::string help;
  bool is_switch = false;
};

// Files a subcommand reads and writes, as config keys.
struct Requirements {
  std::vector<std::string> inputs;           // must be set and exist
  std::vector<std::string> optional_inputs;  // must exist when set
  std::vector<std::string> outputs;          // must be set
  std::map<std::string, std::string> flag_for;
};

struct Context {
  const PipelineConfig& config;
  int threads = 1;
  std::ostream& out;
};

struct CommandSpec {
  std::string name;
  std::string help;
  std::vector<FlagSpec> flags;
  std::function<Requirements(const PipelineConfig&)> requirements;
  // Returns the command's result fields ("counts", "metrics", ...).
  std::function<nlohmann::ordered_json(Context&)> run;
};

const std::vector<CommandSpec>& Commands();

void WriteReport(const std::filesystem::path& path, std::string_view text);

}  // namespace coretag::cli

#endif  // CORETAG_TOOLS_CLI_COMMANDS_H_
