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

#include "coretag/corpus/stopwords.h"

#include <algorithm>

#include "coretag/util/jsonl.h"

namespace coretag {
namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string_view Trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

}  // namespace

const StopwordList& StopwordList::Default() {
  static const StopwordList* list =
      new StopwordList(FromText(BundledStopwordText()));
  return *list;
}

StopwordList StopwordList::FromText(std::string_view text) {
  StopwordList list;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (!line.empty()) list.words_.insert(Lower(line));
    pos = nl + 1;
  }
  return list;
}

StopwordList StopwordList::FromFile(const std::filesystem::path& path) {
  return FromText(ReadTextFile(path));
}

bool StopwordList::Contains(std::string_view word) const {
  return words_.count(Lower(word)) > 0;
}

std::vector<std::string> StopwordList::Sorted() const {
  std::vector<std::string> out(words_.begin(), words_.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool IsStopword(std::string_view word) {
  return StopwordList::Default().Contains(word);
}

}  // namespace coretag
