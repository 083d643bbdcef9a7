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

#ifndef CORETAG_CORPUS_STOPWORDS_H_
#define CORETAG_CORPUS_STOPWORDS_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace coretag {

class StopwordList {
 public:
  StopwordList() = default;

  // The list compiled from core/data/stopwords.txt.
  static const StopwordList& Default();

  // One word per line; '#' starts a comment; blank lines ignored. Words are
  // lowercased on load.
  static StopwordList FromText(std::string_view text);
  static StopwordList FromFile(const std::filesystem::path& path);

  bool Contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }
  // Sorted, for listing and exhaustive checks.
  std::vector<std::string> Sorted() const;

 private:
  std::unordered_set<std::string> words_;
};

// Membership in the default list.
bool IsStopword(std::string_view word);

// Raw text of the bundled list file.
std::string_view BundledStopwordText();

}  // namespace coretag

#endif  // CORETAG_CORPUS_STOPWORDS_H_
