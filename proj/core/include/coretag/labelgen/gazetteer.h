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

#ifndef CORETAG_LABELGEN_GAZETTEER_H_
#define CORETAG_LABELGEN_GAZETTEER_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "coretag/labelgen/labels.h"

namespace coretag {

struct Document;

// Multi-word phrase dictionary. Entries are normalized with the corpus
// tokenizer; entries shorter than two tokens are ignored.
class Gazetteer {
 public:
  Gazetteer() = default;

  static Gazetteer FromPhrases(const std::vector<std::string>& phrases);
  // Plain text, one phrase per line.
  static Gazetteer FromFile(const std::filesystem::path& path);

  void Add(std::string_view phrase);
  void AddTokens(std::span<const std::string> tokens);
  bool Contains(std::span<const std::string> tokens) const;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::size_t max_length() const { return max_length_; }

  // Greedy longest-first matching over one token sequence: among all entry
  // occurrences of length <= k_max, repeatedly keep the longest (leftmost on
  // ties) that does not overlap an already kept match. Returns [start, end)
  // pairs sorted by start.
  std::vector<std::pair<std::size_t, std::size_t>> Match(
      std::span<const std::string> words, std::size_t k_max) const;

 private:
  std::unordered_set<std::string> entries_;
  std::size_t max_length_ = 0;
};

// Context-agnostic dictionary labels for every sentence of `doc`.
LabelSet GazetteerMatch(const Document& doc, const Gazetteer& gazetteer,
                        std::size_t k_max);

}  // namespace coretag

#endif  // CORETAG_LABELGEN_GAZETTEER_H_
