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

#ifndef CORETAG_CORPUS_CORPUS_H_
#define CORETAG_CORPUS_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "coretag/corpus/tokenizer.h"

namespace coretag {

struct Document {
  std::string id;
  std::string raw_text;
  std::vector<SentenceTokens> sentences;

  // Length of the concatenated word sequence used for pattern mining.
  std::size_t WordCount() const;
  std::vector<std::string> Words() const;
  // Space-joined words [start, end) of one sentence.
  std::string SpanText(std::size_t sent_idx, std::size_t start,
                       std::size_t end) const;
};

Document MakeDocument(std::string id, std::string raw_text);

enum class CorpusFormat { kJsonLines };

// Accepts "jsonl" (and its alias "json-lines").
CorpusFormat ParseCorpusFormat(std::string_view id);

// Reads one Document per record, preserving file order. Records are JSON
// objects with string fields "id" and "text"; blank lines are skipped.
// Malformed lines and duplicate ids raise Error(kFormat) naming the line.
std::vector<Document> LoadCorpus(const std::filesystem::path& path,
                                 CorpusFormat format = CorpusFormat::kJsonLines);

void WriteCorpus(const std::filesystem::path& path,
                 const std::vector<Document>& docs);

}  // namespace coretag

#endif  // CORETAG_CORPUS_CORPUS_H_
