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

#ifndef CORETAG_ATTNFEAT_SYNTHETIC_H_
#define CORETAG_ATTNFEAT_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "coretag/attnfeat/providers.h"
#include "coretag/corpus/corpus.h"
#include "coretag/corpus/gold.h"

namespace coretag {

struct SyntheticCorpusOptions {
  std::size_t n_docs = 200;
  std::size_t vocab_size = 2000;
  std::size_t phrase_bank_size = 40;
  std::uint64_t seed = 0;

  // Planted-attention settings written into the generated parameters.
  double delta = 6.0;
  double noise = 0.5;
  std::size_t layers = kDefaultLayers;
  std::size_t heads = kDefaultHeads;

  std::size_t min_phrase_words = 2;
  std::size_t max_phrase_words = 4;
  std::size_t min_sentences = 3;
  std::size_t max_sentences = 6;
  std::size_t min_filler_words = 8;
  std::size_t max_filler_words = 16;
  std::size_t max_phrases_per_doc = 3;
  // Probability that a filler slot holds a common stopword.
  double stopword_rate = 0.12;
};

struct SyntheticCorpus {
  std::vector<Document> docs;
  // One record per sentence, including sentences without injected phrases.
  std::vector<GoldSentenceSpans> gold_spans;
  std::vector<GoldKeyphrases> gold_keyphrases;
  PlantedAttentionParams planted;
};

// Random-token documents with phrases from a bank injected into sentences.
//
// Filler words and phrase words are drawn from disjoint alphabets, so the
// planted provider locates exactly the injected spans. Each document uses
// 1..max_phrases_per_doc bank phrases; a phrase is injected 2-3 times in a
// document unless it may appear only once there without dropping below
// half of its documents repeating it. Injected phrases never touch each
// other. Output is a pure function of the options.
SyntheticCorpus GenerateSyntheticCorpus(const SyntheticCorpusOptions& options);

}  // namespace coretag

#endif  // CORETAG_ATTNFEAT_SYNTHETIC_H_
