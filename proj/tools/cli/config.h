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

#ifndef CORETAG_TOOLS_CLI_CONFIG_H_
#define CORETAG_TOOLS_CLI_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace coretag::cli {

enum class ValueType { kString, kPath, kInt, kReal, kBool };

struct KeySpec {
  std::string_view key;
  ValueType type;
  std::string_view default_value;
  std::string_view help;
};

// Every recognized configuration key.
const std::vector<KeySpec>& ConfigKeys();
const KeySpec* FindKey(std::string_view key);

// Flat dotted key/value configuration: defaults, then a config file, then
// command-line overrides. Unknown keys and malformed values raise
// Error(kConfig).
class PipelineConfig {
 public:
  PipelineConfig();

  // `key = value` lines; '#' starts a comment; blank lines ignored.
  void MergeFile(const std::filesystem::path& path);
  void MergeText(std::string_view text, std::string_view origin);
  void Set(std::string_view key, std::string value);

  bool IsSet(std::string_view key) const;  // non-default
  const std::string& Raw(std::string_view key) const;

  std::string String(std::string_view key) const;
  std::filesystem::path Path(std::string_view key) const;
  std::int64_t Int(std::string_view key) const;
  std::uint64_t Uint(std::string_view key) const;
  std::size_t Count(std::string_view key) const;
  double Real(std::string_view key) const;
  bool Bool(std::string_view key) const;
  std::vector<std::size_t> CountList(std::string_view key) const;

  // Sorted {"key": typed value} JSON object text.
  std::string ToJson() const;

 private:
  std::map<std::string, std::string, std::less<>> values_;
  std::set<std::string, std::less<>> explicit_;
};

}  // namespace coretag::cli

#endif  // CORETAG_TOOLS_CLI_CONFIG_H_
