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

#include "coretag/eval/tfidf.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace coretag {

DocumentPhrases CollectDocumentPhrases(const Document& doc,
                                       std::span<const Span> spans) {
  std::vector<Span> ordered(spans.begin(), spans.end());
  std::sort(ordered.begin(), ordered.end());
  DocumentPhrases out;
  out.doc_id = doc.id;
  std::unordered_map<std::string, std::size_t> slot;
  for (const Span& s : ordered) {
    std::string phrase = doc.SpanText(s.sent_idx, s.start, s.end);
    const std::size_t pos = doc.sentences[s.sent_idx].doc_offset + s.start;
    auto [it, inserted] = slot.emplace(phrase, out.phrases.size());
    if (inserted) {
      out.phrases.push_back({std::move(phrase), 1, pos});
    } else {
      ++out.phrases[it->second].count;
    }
  }
  return out;
}

DocumentFrequency::DocumentFrequency(std::span<const DocumentPhrases> corpus)
    : documents_(corpus.size()) {
  for (const DocumentPhrases& d : corpus) {
    std::unordered_set<std::string_view> seen;
    for (const PhraseCount& p : d.phrases) {
      if (p.count > 0 && seen.insert(p.phrase).second) ++df_[p.phrase];
    }
  }
}

std::size_t DocumentFrequency::df(const std::string& phrase) const {
  auto it = df_.find(phrase);
  return it == df_.end() ? 0 : it->second;
}

double DocumentFrequency::Idf(const std::string& phrase) const {
  return std::log((1.0 + static_cast<double>(documents_)) /
                  (1.0 + static_cast<double>(df(phrase)))) +
         1.0;
}

std::vector<ScoredPhrase> TfidfRank(const DocumentPhrases& doc,
                                    const DocumentFrequency& df,
                                    std::size_t top_k) {
  std::vector<ScoredPhrase> out;
  out.reserve(doc.phrases.size());
  for (const PhraseCount& p : doc.phrases) {
    if (p.count == 0) continue;
    out.push_back({p.phrase, static_cast<double>(p.count) * df.Idf(p.phrase),
                   p.count, p.first_position});
  }
  std::sort(out.begin(), out.end(), [](const ScoredPhrase& a, const ScoredPhrase& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.first_position != b.first_position) {
      return a.first_position < b.first_position;
    }
    return a.phrase < b.phrase;
  });
  if (top_k > 0 && out.size() > top_k) out.resize(top_k);
  return out;
}

}  // namespace coretag
