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

#include "coretag/labelgen/gazetteer.h"

#include <algorithm>

#include "coretag/corpus/corpus.h"
#include "coretag/util/jsonl.h"

namespace coretag {

Gazetteer Gazetteer::FromPhrases(const std::vector<std::string>& phrases) {
  Gazetteer g;
  for (const auto& p : phrases) g.Add(p);
  return g;
}

Gazetteer Gazetteer::FromFile(const std::filesystem::path& path) {
  Gazetteer g;
  ForEachLine(path, [&](std::size_t, std::string_view line) { g.Add(line); });
  return g;
}

void Gazetteer::Add(std::string_view phrase) {
  const auto tokens = TokenizeWords(phrase);
  AddTokens(tokens);
}

void Gazetteer::AddTokens(std::span<const std::string> tokens) {
  if (tokens.size() < kMinSpanLength) return;
  std::vector<std::string> copy(tokens.begin(), tokens.end());
  entries_.insert(JoinWords(copy, 0, copy.size()));
  max_length_ = std::max(max_length_, tokens.size());
}

bool Gazetteer::Contains(std::span<const std::string> tokens) const {
  std::string key;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) key.push_back(' ');
    key += tokens[i];
  }
  return entries_.count(key) > 0;
}

std::vector<std::pair<std::size_t, std::size_t>> Gazetteer::Match(
    std::span<const std::string> words, std::size_t k_max) const {
  std::vector<std::pair<std::size_t, std::size_t>> found;
  const std::size_t longest = std::min(k_max, max_length_);
  for (std::size_t start = 0; start < words.size(); ++start) {
    std::string key = words[start];
    for (std::size_t end = start + 1; end < words.size() && end - start < longest;
         ++end) {
      key.push_back(' ');
      key += words[end];
      if (entries_.count(key)) found.emplace_back(start, end + 1);
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    const auto la = a.second - a.first;
    const auto lb = b.second - b.first;
    return la != lb ? la > lb : a.first < b.first;
  });
  std::vector<char> taken(words.size(), 0);
  std::vector<std::pair<std::size_t, std::size_t>> kept;
  for (const auto& [s, e] : found) {
    if (std::any_of(taken.begin() + static_cast<std::ptrdiff_t>(s),
                    taken.begin() + static_cast<std::ptrdiff_t>(e),
                    [](char t) { return t != 0; })) {
      continue;
    }
    std::fill(taken.begin() + static_cast<std::ptrdiff_t>(s),
              taken.begin() + static_cast<std::ptrdiff_t>(e), 1);
    kept.emplace_back(s, e);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

LabelSet GazetteerMatch(const Document& doc, const Gazetteer& gazetteer,
                        std::size_t k_max) {
  LabelSet labels;
  if (gazetteer.empty()) return labels;
  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    for (const auto& [start, end] : gazetteer.Match(doc.sentences[s].words, k_max)) {
      labels.push_back(SpanLabel{doc.id, Span{s, start, end},
                                 Polarity::kPositive, LabelSource::kGazetteer});
    }
  }
  Canonicalize(labels);
  return labels;
}

}  // namespace coretag
