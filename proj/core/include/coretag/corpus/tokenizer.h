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

#ifndef CORETAG_CORPUS_TOKENIZER_H_
#define CORETAG_CORPUS_TOKENIZER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace coretag {

// One sentence of a document. `doc_offset` is the index of words[0] in the
// document's concatenated word sequence.
struct SentenceTokens {
  std::vector<std::string> words;
  std::size_t doc_offset = 0;

  std::size_t size() const { return words.size(); }
  bool operator==(const SentenceTokens&) const = default;
};

// Deterministic tokenizer and sentence splitter.
//
// Words are whitespace-separated chunks, ASCII-lowercased. Leading and
// trailing ASCII punctuation is detached one character per token; interior
// characters (hyphens, apostrophes, dots) stay in the word. The
// abbreviations "e.g.", "i.e.", "fig.", "eq." and the "al." of "et al." are
// kept whole.
//
// A sentence ends after a chunk whose detached trailing punctuation contains
// '.', '!' or '?', when the next chunk starts with an uppercase ASCII letter
// or a digit.
std::vector<SentenceTokens> TokenizeAndSplit(std::string_view raw_text);

// Same token rules without sentence splitting.
std::vector<std::string> TokenizeWords(std::string_view text);

// Tokenizes and re-joins with single spaces. Used to normalize phrase strings
// coming from gazetteers and gold files.
std::string NormalizePhrase(std::string_view phrase);

std::string JoinWords(const std::vector<std::string>& words, std::size_t begin,
                      std::size_t end);

// True when every byte is ASCII punctuation.
bool IsPunctuationToken(std::string_view token);

// True for tokens made of digits plus optional '.', ',' separators and a
// leading sign, e.g. "42", "3.14", "-1,000".
bool IsNumericToken(std::string_view token);

}  // namespace coretag

#endif  // CORETAG_CORPUS_TOKENIZER_H_
