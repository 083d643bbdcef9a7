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

#include "coretag/corpus/tokenizer.h"

#include <algorithm>
#include <array>

namespace coretag {
namespace {

bool IsSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsPunct(unsigned char c) {
  return (c >= 33 && c <= 47) || (c >= 58 && c <= 64) || (c >= 91 && c <= 96) ||
         (c >= 123 && c <= 126);
}

bool IsTerminal(char c) { return c == '.' || c == '!' || c == '?'; }

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool IsAbbreviation(std::string_view lowered, std::string_view previous_core) {
  static constexpr std::array<std::string_view, 4> kAbbreviations = {
      "e.g.", "i.e.", "fig.", "eq."};
  if (std::find(kAbbreviations.begin(), kAbbreviations.end(), lowered) !=
      kAbbreviations.end()) {
    return true;
  }
  return lowered == "al." && previous_core == "et";
}

std::vector<std::string_view> SplitWhitespace(std::string_view text) {
  std::vector<std::string_view> chunks;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && !IsSpace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) chunks.push_back(text.substr(start, i - start));
  }
  return chunks;
}

struct Chunk {
  std::vector<std::string> tokens;
  std::string core;
  bool ends_sentence_punct = false;
};

Chunk TokenizeChunk(std::string_view chunk, std::string_view previous_core) {
  Chunk out;
  std::size_t begin = 0;
  while (begin < chunk.size() &&
         IsPunct(static_cast<unsigned char>(chunk[begin]))) {
    out.tokens.emplace_back(1, chunk[begin]);
    ++begin;
  }
  std::size_t end = chunk.size();
  std::vector<std::string> trailing;
  while (end > begin && IsPunct(static_cast<unsigned char>(chunk[end - 1])) &&
         !IsAbbreviation(Lower(chunk.substr(begin, end - begin)),
                         previous_core)) {
    trailing.emplace_back(1, chunk[end - 1]);
    if (IsTerminal(chunk[end - 1])) out.ends_sentence_punct = true;
    --end;
  }
  if (end > begin) {
    out.core = Lower(chunk.substr(begin, end - begin));
    out.tokens.push_back(out.core);
  }
  out.tokens.insert(out.tokens.end(), trailing.rbegin(), trailing.rend());
  return out;
}

bool StartsSentence(std::string_view chunk) {
  unsigned char c = static_cast<unsigned char>(chunk.front());
  return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

}  // namespace

std::vector<SentenceTokens> TokenizeAndSplit(std::string_view raw_text) {
  std::vector<SentenceTokens> sentences;
  const auto chunks = SplitWhitespace(raw_text);
  SentenceTokens current;
  std::size_t offset = 0;
  std::string previous_core;
  for (std::size_t c = 0; c < chunks.size(); ++c) {
    Chunk chunk = TokenizeChunk(chunks[c], previous_core);
    for (auto& token : chunk.tokens) current.words.push_back(std::move(token));
    previous_core = chunk.core;
    const bool boundary = !chunk.core.empty() && chunk.ends_sentence_punct &&
                          c + 1 < chunks.size() && StartsSentence(chunks[c + 1]);
    if (boundary && !current.words.empty()) {
      current.doc_offset = offset;
      offset += current.words.size();
      sentences.push_back(std::move(current));
      current = SentenceTokens{};
    }
  }
  if (!current.words.empty()) {
    current.doc_offset = offset;
    sentences.push_back(std::move(current));
  }
  return sentences;
}

std::vector<std::string> TokenizeWords(std::string_view text) {
  std::vector<std::string> words;
  std::string previous_core;
  for (std::string_view chunk : SplitWhitespace(text)) {
    Chunk c = TokenizeChunk(chunk, previous_core);
    for (auto& token : c.tokens) words.push_back(std::move(token));
    previous_core = c.core;
  }
  return words;
}

std::string JoinWords(const std::vector<std::string>& words, std::size_t begin,
                      std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) out.push_back(' ');
    out += words[i];
  }
  return out;
}

std::string NormalizePhrase(std::string_view phrase) {
  auto words = TokenizeWords(phrase);
  return JoinWords(words, 0, words.size());
}

bool IsPunctuationToken(std::string_view token) {
  return !token.empty() &&
         std::all_of(token.begin(), token.end(), [](char c) {
           return IsPunct(static_cast<unsigned char>(c));
         });
}

bool IsNumericToken(std::string_view token) {
  std::size_t i = 0;
  if (!token.empty() && (token[0] == '-' || token[0] == '+')) i = 1;
  bool digit = false;
  for (; i < token.size(); ++i) {
    char c = token[i];
    if (c >= '0' && c <= '9') {
      digit = true;
    } else if (c != '.' && c != ',') {
      return false;
    }
  }
  return digit;
}

}  // namespace coretag
