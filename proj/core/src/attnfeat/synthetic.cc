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

#include "coretag/attnfeat/synthetic.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <set>
#include <string>
#include <unordered_set>

#include "coretag/corpus/stopwords.h"
#include "coretag/util/error.h"
#include "coretag/util/rng.h"

namespace coretag {
namespace {

constexpr std::array<std::string_view, 12> kFillerStopwords = {
    "the", "of", "and", "in", "a", "to", "for", "with", "on", "is", "by", "we"};

// Pronounceable random word of 2-4 consonant-vowel syllables.
std::string RandomWord(Rng& rng) {
  static constexpr std::string_view kConsonants = "bcdfghjklmnprstvz";
  static constexpr std::string_view kVowels = "aeiou";
  const std::size_t syllables = static_cast<std::size_t>(rng.Between(2, 4));
  std::string word;
  for (std::size_t s = 0; s < syllables; ++s) {
    word.push_back(kConsonants[rng.Below(kConsonants.size())]);
    word.push_back(kVowels[rng.Below(kVowels.size())]);
  }
  return word;
}

std::vector<std::string> UniqueWords(Rng& rng, std::size_t count,
                                     std::unordered_set<std::string>& used) {
  std::vector<std::string> words;
  words.reserve(count);
  while (words.size() < count) {
    std::string w = RandomWord(rng);
    if (StopwordList::Default().Contains(w) || !used.insert(w).second) continue;
    words.push_back(std::move(w));
  }
  return words;
}

std::string SentenceText(const std::vector<std::string>& words) {
  std::string text;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) text.push_back(' ');
    text += words[i];
  }
  if (!text.empty() && text[0] >= 'a' && text[0] <= 'z') {
    text[0] = static_cast<char>(text[0] - 'a' + 'A');
  }
  text.push_back('.');
  return text;
}

}  // namespace

SyntheticCorpus GenerateSyntheticCorpus(const SyntheticCorpusOptions& o) {
  if (o.phrase_bank_size < 1) {
    throw Error(ErrorCode::kInvalidArgument, "phrase_bank_size must be >= 1");
  }
  if (o.vocab_size < 1 || o.min_phrase_words < 2 ||
      o.max_phrase_words < o.min_phrase_words ||
      o.max_sentences < o.min_sentences || o.max_filler_words < o.min_filler_words ||
      o.max_phrases_per_doc < 1 || o.min_sentences < 3 ||
      o.min_filler_words + 1 < o.max_phrases_per_doc) {
    throw Error(ErrorCode::kInvalidArgument, "inconsistent synthetic corpus options");
  }
  Rng rng(o.seed);
  std::unordered_set<std::string> used;
  const auto filler = UniqueWords(rng, o.vocab_size, used);

  SyntheticCorpus corpus;
  corpus.planted.seed = o.seed;
  corpus.planted.delta = o.delta;
  corpus.planted.noise = o.noise;
  corpus.planted.layers = o.layers;
  corpus.planted.heads = o.heads;
  std::vector<std::vector<std::string>>& bank = corpus.planted.phrases;
  for (std::size_t p = 0; p < o.phrase_bank_size; ++p) {
    const std::size_t len = static_cast<std::size_t>(rng.Between(
        static_cast<std::int64_t>(o.min_phrase_words),
        static_cast<std::int64_t>(o.max_phrase_words)));
    bank.push_back(UniqueWords(rng, len, used));
  }

  std::vector<std::size_t> repeated_docs(bank.size(), 0);
  std::vector<std::size_t> single_docs(bank.size(), 0);

  for (std::size_t d = 0; d < o.n_docs; ++d) {
    char id[32];
    std::snprintf(id, sizeof(id), "syn-%05zu", d);

    // Which phrases, and how often each.
    const std::size_t n_phrases = std::min<std::size_t>(
        bank.size(), static_cast<std::size_t>(rng.Between(
                         1, static_cast<std::int64_t>(o.max_phrases_per_doc))));
    std::set<std::size_t> chosen;
    while (chosen.size() < n_phrases) chosen.insert(rng.Below(bank.size()));
    std::vector<std::size_t> occurrences;  // bank indices, one per injection
    for (std::size_t p : chosen) {
      std::size_t times = static_cast<std::size_t>(rng.Between(2, 3));
      if (single_docs[p] + 1 <= repeated_docs[p] && rng.Bernoulli(0.3)) times = 1;
      (times == 1 ? single_docs[p] : repeated_docs[p]) += 1;
      for (std::size_t t = 0; t < times; ++t) occurrences.push_back(p);
    }

    const std::size_t n_sentences = static_cast<std::size_t>(
        rng.Between(static_cast<std::int64_t>(o.min_sentences),
                    static_cast<std::int64_t>(o.max_sentences)));
    std::vector<std::vector<std::size_t>> per_sentence(n_sentences);
    for (std::size_t p : occurrences) {
      // At most max_phrases_per_doc injections per sentence keep them apart.
      std::size_t s;
      do {
        s = rng.Below(n_sentences);
      } while (per_sentence[s].size() >= o.max_phrases_per_doc);
      per_sentence[s].push_back(p);
    }

    Document doc;
    doc.id = id;
    std::set<std::size_t> doc_phrases;
    std::string text;
    for (std::size_t s = 0; s < n_sentences; ++s) {
      const std::size_t n_filler = static_cast<std::size_t>(
          rng.Between(static_cast<std::int64_t>(o.min_filler_words),
                      static_cast<std::int64_t>(o.max_filler_words)));
      // Distinct gaps between filler words keep phrases separated.
      std::vector<std::size_t> gaps;
      {
        std::set<std::size_t> g;
        while (g.size() < per_sentence[s].size()) g.insert(rng.Below(n_filler + 1));
        gaps.assign(g.begin(), g.end());
      }
      std::vector<std::string> words;
      GoldSentenceSpans gold{doc.id, s, {}};
      std::size_t next_phrase = 0;
      for (std::size_t slot = 0; slot <= n_filler; ++slot) {
        if (next_phrase < gaps.size() && gaps[next_phrase] == slot) {
          const auto& phrase = bank[per_sentence[s][next_phrase]];
          gold.spans.emplace_back(words.size(), words.size() + phrase.size());
          words.insert(words.end(), phrase.begin(), phrase.end());
          doc_phrases.insert(per_sentence[s][next_phrase]);
          ++next_phrase;
        }
        if (slot == n_filler) break;
        if (rng.Bernoulli(o.stopword_rate)) {
          words.emplace_back(kFillerStopwords[rng.Below(kFillerStopwords.size())]);
        } else {
          words.push_back(filler[rng.Below(filler.size())]);
        }
      }
      if (!text.empty()) text.push_back(' ');
      text += SentenceText(words);
      corpus.gold_spans.push_back(std::move(gold));
    }
    GoldKeyphrases keyphrases{doc.id, {}};
    for (std::size_t p : doc_phrases) {
      keyphrases.keyphrases.push_back(JoinWords(bank[p], 0, bank[p].size()));
    }
    corpus.gold_keyphrases.push_back(std::move(keyphrases));
    corpus.docs.push_back(MakeDocument(doc.id, std::move(text)));
  }
  return corpus;
}

}  // namespace coretag
