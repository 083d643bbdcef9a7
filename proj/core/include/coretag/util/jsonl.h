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

#ifndef CORETAG_UTIL_JSONL_H_
#define CORETAG_UTIL_JSONL_H_

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <string_view>

namespace coretag {

// Calls `fn(line_number, line)` for every non-blank line (1-based numbering
// counts blank lines too). Throws Error(kIo) when the file cannot be opened.
void ForEachLine(const std::filesystem::path& path,
                 const std::function<void(std::size_t, std::string_view)>& fn);

// Writes newline-terminated records to a file, truncating it on open.
class LineWriter {
 public:
  explicit LineWriter(const std::filesystem::path& path);
  ~LineWriter();

  LineWriter(const LineWriter&) = delete;
  LineWriter& operator=(const LineWriter&) = delete;

  void Write(std::string_view line);
  void Close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

std::string ReadTextFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, std::string_view text);

}  // namespace coretag

#endif  // CORETAG_UTIL_JSONL_H_
