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

#ifndef CORETAG_CORPUS_GOLD_H_
#define CORETAG_CORPUS_GOLD_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace coretag {

// Gold keyphrases for one document: {"id": string, "keyphrases": [string]}.
struct GoldKeyphrases {
  std::string id;
  std::vector<std::string> keyphrases;
};

// Gold phrase spans of one sentence:
// {"id": string, "sent_idx": int, "spans": [[start, end], ...]}, end exclusive.
struct GoldSentenceSpans {
  std::string id;
  std::size_t sent_idx = 0;
  std::vector<std::pair<std::size_t, std::size_t>> spans;
};

std::vector<GoldKeyphrases> LoadGoldKeyphrases(const std::filesystem::path& path);
void WriteGoldKeyphrases(const std::filesystem::path& path,
                         const std::vector<GoldKeyphrases>& gold);

std::vector<GoldSentenceSpans> LoadGoldSpans(const std::filesystem::path& path);
void WriteGoldSpans(const std::filesystem::path& path,
                    const std::vector<GoldSentenceSpans>& gold);

}  // namespace coretag

#endif  // CORETAG_CORPUS_GOLD_H_
