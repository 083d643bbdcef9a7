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

#ifndef CORETAG_UTIL_ERROR_H_
#define CORETAG_UTIL_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace coretag {

// Coarse error categories. The CLI maps each one to a distinct exit code.
enum class ErrorCode {
  kInvalidArgument,
  kFailedPrecondition,
  kNotFound,
  kIo,
  kFormat,
  kVersion,
  kChecksum,
  kNumeric,
  kConfig,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace coretag

#endif  // CORETAG_UTIL_ERROR_H_
