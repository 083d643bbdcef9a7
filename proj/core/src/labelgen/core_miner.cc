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

#include "coretag/labelgen/core_miner.h"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "coretag/corpus/corpus.h"
#include "coretag/corpus/stopwords.h"
#include "coretag/util/error.h"

namespace coretag {
namespace {

using WordId = std::uint32_t;

// Byte key of the id sequence ids[pos, pos + n).
std::string NgramKey(const std::vector<WordId>& ids, std::size_t pos,
                     std::size_t n) {
  std::string key(n * sizeof(WordId), '\0');
  std::memcpy(key.data(), ids.data() + pos, n * sizeof(WordId));
  return key;
}

struct FrequentNgram {
  std::size_t length = 0;
  std::vector<std::size_t> positions;
};

void CheckOptions(const MiningOptions& options) {
  if (options.min_freq < 2) {
    throw Error(ErrorCode::kInvalidArgument, "min_freq must be >= 2");
  }
  if (options.k_max < kMinSpanLength) {
    throw Error(ErrorCode::kInvalidArgument, "k_max must be >= 2");
  }
}

}  // namespace

bool PassesPhraseFilter(std::span<const std::string> tokens,
                        const StopwordList& stopwords) {
  if (tokens.empty()) return false;
  if (stopwords.Contains(tokens.front()) || stopwords.Contains(tokens.back())) {
    return false;
  }
  return std::none_of(tokens.begin(), tokens.end(), [](const std::string& t) {
    return IsPunctuationToken(t) || IsNumericToken(t);
  });
}

std::vector<CorePattern> MineCorePatterns(std::span<const std::string> words,
                                          const MiningOptions& options) {
  CheckOptions(options);
  const StopwordList& stopwords =
      options.stopwords ? *options.stopwords : StopwordList::Default();
  const std::size_t n_words = words.size();

  std::vector<WordId> ids(n_words);
  {
    std::unordered_map<std::string_view, WordId> vocab;
    for (std::size_t i = 0; i < n_words; ++i) {
      auto [it, inserted] =
          vocab.emplace(words[i], static_cast<WordId>(vocab.size()));
      ids[i] = it->second;
    }
  }

  // frequent_at[i] is true when the (n-1)-gram starting at i was frequent.
  std::vector<char> frequent_at(n_words, 1);
  std::unordered_map<std::string, FrequentNgram> frequent;

  for (std::size_t n = kMinSpanLength; n <= options.k_max && n <= n_words; ++n) {
    std::unordered_map<std::string, std::vector<std::size_t>> counts;
    for (std::size_t i = 0; i + n <= n_words; ++i) {
      if (n > kMinSpanLength && !(frequent_at[i] && frequent_at[i + 1])) continue;
      counts[NgramKey(ids, i, n)].push_back(i);
    }
    std::vector<char> next_frequent(n_words, 0);
    bool any = false;
    for (auto& [key, positions] : counts) {
      if (positions.size() < options.min_freq) continue;
      any = true;
      for (std::size_t p : positions) next_frequent[p] = 1;
      frequent.emplace(key, FrequentNgram{n, std::move(positions)});
    }
    if (!any) break;
    frequent_at = std::move(next_frequent);
  }

  // Filter first, then keep only candidates not contained in a longer one.
  std::unordered_set<std::string> candidates;
  for (const auto& [key, ngram] : frequent) {
    const std::size_t p = ngram.positions.front();
    if (PassesPhraseFilter(words.subspan(p, ngram.length), stopwords)) {
      candidates.insert(key);
    }
  }
  std::unordered_set<std::string> suppressed;
  for (const auto& key : candidates) {
    const FrequentNgram& ngram = frequent.at(key);
    if (ngram.length <= kMinSpanLength) continue;
    const std::size_t p = ngram.positions.front();
    for (std::size_t len = kMinSpanLength; len < ngram.length; ++len) {
      for (std::size_t off = 0; off + len <= ngram.length; ++off) {
        std::string sub = NgramKey(ids, p + off, len);
        if (candidates.count(sub)) suppressed.insert(std::move(sub));
      }
    }
  }

  std::vector<CorePattern> patterns;
  for (const auto& key : candidates) {
    if (suppressed.count(key)) continue;
    const FrequentNgram& ngram = frequent.at(key);
    CorePattern pattern;
    const std::size_t p = ngram.positions.front();
    pattern.tokens.assign(words.begin() + static_cast<std::ptrdiff_t>(p),
                          words.begin() + static_cast<std::ptrdiff_t>(p + ngram.length));
    pattern.positions = ngram.positions;
    std::sort(pattern.positions.begin(), pattern.positions.end());
    patterns.push_back(std::move(pattern));
  }
  std::sort(patterns.begin(), patterns.end(),
            [](const CorePattern& a, const CorePattern& b) {
              return a.tokens < b.tokens;
            });
  return patterns;
}

LabelSet MineCorePhrases(const Document& doc, const MiningOptions& options) {
  const std::vector<std::string> words = doc.Words();
  LabelSet labels;
  if (words.size() < 2 * kMinSpanLength) {
    CheckOptions(options);
    return labels;
  }
  // Sentence index of every word position.
  std::vector<std::size_t> sentence_of(words.size());
  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    const auto& sent = doc.sentences[s];
    for (std::size_t w = 0; w < sent.size(); ++w) {
      sentence_of[sent.doc_offset + w] = s;
    }
  }
  for (const auto& pattern : MineCorePatterns(words, options)) {
    const std::size_t n = pattern.tokens.size();
    for (std::size_t p : pattern.positions) {
      const std::size_t s = sentence_of[p];
      if (sentence_of[p + n - 1] != s) continue;
      const std::size_t start = p - doc.sentences[s].doc_offset;
      labels.push_back(SpanLabel{doc.id, Span{s, start, start + n},
                                 Polarity::kPositive, LabelSource::kCore});
    }
  }
  Canonicalize(labels);
  return labels;
}

}  // namespace coretag
