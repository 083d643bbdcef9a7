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

#include "cli/app.h"

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <list>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cli/commands.h"
#include "cli/config.h"

namespace coretag::cli {
namespace {

// Binds one named flag of a subcommand to a configuration key.
struct BoundFlag {
  std::string key;
  CLI::App* owner = nullptr;
  CLI::Option* option = nullptr;
  std::string value;
  bool is_switch = false;
  bool switch_value = false;
};

int ResolveThreads(const PipelineConfig& config) {
  std::int64_t threads = config.Int("threads");
  if (threads < 0) throw Error(ErrorCode::kConfig, "threads must be >= 0");
  if (threads == 0) {
    if (const char* env = std::getenv("UCP_THREADS")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end == env || *end != '\0' || v < 1) {
        throw Error(ErrorCode::kConfig,
                    std::string("UCP_THREADS must be a positive integer, got '") +
                        env + "'");
      }
      threads = v;
    } else {
      threads = 1;
    }
  }
  return static_cast<int>(threads);
}

void CheckRequirements(const PipelineConfig& config, const Requirements& needs) {
  auto flag_hint = [&](const std::string& key) {
    auto it = needs.flag_for.find(key);
    return it == needs.flag_for.end() ? std::string() : " (" + it->second + ")";
  };
  for (const std::string& key : needs.outputs) {
    if (config.Raw(key).empty()) {
      throw Error(ErrorCode::kConfig,
                  "missing required setting " + key + flag_hint(key));
    }
  }
  for (const std::string& key : needs.inputs) {
    if (config.Raw(key).empty()) {
      throw Error(ErrorCode::kConfig,
                  "missing required setting " + key + flag_hint(key));
    }
  }
  std::vector<std::string> optional_inputs = needs.optional_inputs;
  for (const std::string& key : needs.inputs) optional_inputs.push_back(key);
  for (const std::string& key : optional_inputs) {
    const std::string& value = config.Raw(key);
    if (value.empty()) continue;
    if (!std::filesystem::exists(value)) {
      throw Error(ErrorCode::kIo, "input path does not exist: " + value + " (" +
                                      key + ")");
    }
  }
}

}  // namespace

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig:
      return kExitConfig;
    case ErrorCode::kIo:
      return kExitPath;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kNotFound:
    case ErrorCode::kFormat:
    case ErrorCode::kVersion:
    case ErrorCode::kChecksum:
      return kExitData;
    case ErrorCode::kFailedPrecondition:
      return kExitPrecondition;
    case ErrorCode::kNumeric:
      return kExitNumeric;
  }
  return kExitInternal;
}

std::string ErrorLine(std::string_view kind, int exit_code, std::string_view message) {
  nlohmann::ordered_json j = {{"error", std::string(kind)},
                              {"exit_code", exit_code},
                              {"message", std::string(message)}};
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unsupervised phrase tagging toolkit.", "coretag"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string seed;
  std::string threads;
  std::vector<std::string> overrides;
  bool dry_run = false;
  auto* config_opt =
      app.add_option("--config", config_path, "Config file of 'key = value' lines");
  auto* seed_opt = app.add_option("--seed", seed, "Global seed (key: seed)");
  auto* threads_opt = app.add_option(
      "--threads", threads, "Worker cap (key: threads; env UCP_THREADS)");
  app.add_option("--set", overrides, "Override any config key: key=value");
  app.add_flag("--dry-run", dry_run, "Resolve and validate the config, then exit");

  const std::vector<CommandSpec>& commands = Commands();
  std::list<BoundFlag> bound;
  std::vector<std::pair<CLI::App*, const CommandSpec*>> subs;
  for (const CommandSpec& spec : commands) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    for (const FlagSpec& f : spec.flags) {
      BoundFlag& b = bound.emplace_back();
      b.key = f.key;
      b.owner = sub;
      b.is_switch = f.is_switch;
      const std::string help = f.help + " (key: " + f.key + ")";
      if (f.is_switch) {
        b.option = sub->add_flag(f.name, b.switch_value, help);
      } else {
        b.option = sub->add_option(f.name, b.value, help);
      }
    }
    subs.emplace_back(sub, &spec);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << ErrorLine("usage", kExitUsage, e.what()) << "\n";
    return kExitUsage;
  }

  const CommandSpec* command = nullptr;
  CLI::App* chosen = nullptr;
  for (auto& [sub, spec] : subs) {
    if (sub->parsed()) {
      command = spec;
      chosen = sub;
    }
  }
  if (!command) {
    err << ErrorLine("usage", kExitUsage, "no subcommand given") << "\n";
    return kExitUsage;
  }

  try {
    PipelineConfig config;
    if (config_opt->count()) config.MergeFile(config_path);
    for (const std::string& kv : overrides) {
      const std::size_t eq = kv.find('=');
      if (eq == std::string::npos) {
        throw Error(ErrorCode::kConfig, "--set expects key=value, got '" + kv + "'");
      }
      config.Set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (seed_opt->count()) config.Set("seed", seed);
    if (threads_opt->count()) config.Set("threads", threads);
    for (BoundFlag& b : bound) {
      if (!b.option->count() || b.owner != chosen) continue;
      config.Set(b.key, b.is_switch ? (b.switch_value ? "true" : "false") : b.value);
    }

    Context ctx{config, ResolveThreads(config), out};
    Requirements needs = command->requirements(config);
    for (const FlagSpec& f : command->flags) needs.flag_for.emplace(f.key, f.name);
    CheckRequirements(config, needs);
    if (dry_run) {
      nlohmann::ordered_json j = {{"command", command->name},
                                  {"dry_run", true},
                                  {"config", nlohmann::ordered_json::parse(config.ToJson())}};
      out << j.dump() << "\n";
      return kExitOk;
    }
    nlohmann::ordered_json result = command->run(ctx);
    nlohmann::ordered_json report = {{"command", command->name}};
    for (auto& [k, v] : result.items()) report[k] = v;
    report["config"] = nlohmann::ordered_json::parse(config.ToJson());
    if (!config.Raw("paths.report").empty()) {
      WriteReport(config.Path("paths.report"), report.dump(2) + "\n");
    }
    report.erase("config");
    out << report.dump() << "\n";
    return kExitOk;
  } catch (const Error& e) {
    const int code = ExitCodeFor(e.code());
    err << ErrorLine(ErrorCodeName(e.code()), code, e.what()) << "\n";
    return code;
  } catch (const std::exception& e) {
    err << ErrorLine("internal", kExitInternal, e.what()) << "\n";
    return kExitInternal;
  }
}

}  // namespace coretag::cli
