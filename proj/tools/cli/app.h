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

#ifndef CORETAG_TOOLS_CLI_APP_H_
#define CORETAG_TOOLS_CLI_APP_H_

#include <ostream>
#include <string>
#include <string_view>

#include "coretag/util/error.h"

namespace coretag::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,
  kExitConfig = 3,
  kExitPath = 4,
  kExitData = 5,
  kExitPrecondition = 6,
  kExitNumeric = 7,
};

int ExitCodeFor(ErrorCode code);

// Single-line JSON: {"error": kind, "exit_code": n, "message": text}.
std::string ErrorLine(std::string_view kind, int exit_code, std::string_view message);

// Parses argv, runs one subcommand and returns the process exit status.
// Results go to `out` as one JSON line; failures to `err` as one ErrorLine.
int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace coretag::cli

#endif  // CORETAG_TOOLS_CLI_APP_H_
