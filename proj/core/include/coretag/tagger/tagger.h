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

#ifndef CORETAG_TAGGER_TAGGER_H_
#define CORETAG_TAGGER_TAGGER_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "coretag/attnfeat/providers.h"
#include "coretag/classifier/model.h"
#include "coretag/corpus/corpus.h"
#include "coretag/labelgen/labels.h"

namespace coretag {

// All spans of length 2..min(k_max, n) ordered by (start, end).
std::vector<Span> EnumerateSpans(std::size_t sent_idx, std::size_t n_words,
                                 std::size_t k_max);

struct Prediction {
  Span span;
  double probability = 0.0;
  double logit = 0.0;

  bool operator==(const Prediction&) const = default;
};

enum class DecodeMode { kOverlap, kGreedyNonOverlap };

DecodeMode ParseDecodeMode(std::string_view name);  // "overlap" | "greedy"
std::string_view DecodeModeName(DecodeMode mode);

// Predictions with probability >= threshold. Greedy mode repeatedly keeps the
// most probable remaining span (ties: longer, then smaller start) and drops
// everything overlapping it. Output is ordered by span.
std::vector<Prediction> Decode(std::vector<Prediction> scored, double threshold,
                               DecodeMode mode);

struct TagOptions {
  double threshold = 0.5;
  DecodeMode decode = DecodeMode::kOverlap;
};

struct SentenceTags {
  std::vector<Prediction> predictions;
  std::size_t skipped = 0;  // spans touching words past the truncation limit
};

// Scores every candidate span of one sentence.
// Errors: provider/checkpoint channel mismatch -> kInvalidArgument; provider
// misses propagate (kNotFound).
SentenceTags TagSentence(const SentenceKey& key, const SentenceTokens& sentence,
                         const AttentionProvider& provider,
                         const ModelParams& params, const TagOptions& options);

struct DocumentPrediction {
  std::string doc_id;
  Prediction prediction;

  bool operator==(const DocumentPrediction&) const = default;
};

struct CorpusTags {
  std::vector<DocumentPrediction> predictions;  // corpus order
  std::size_t sentences = 0;
  std::size_t skipped = 0;
};

CorpusTags TagCorpus(const std::vector<Document>& docs,
                     const AttentionProvider& provider, const ModelParams& params,
                     const TagOptions& options, int threads = 1);

// JSON Lines {"doc_id", "sent_idx", "start", "end", "prob", "logit"}.
void WritePredictions(const std::filesystem::path& path,
                      const std::vector<DocumentPrediction>& predictions);
std::vector<DocumentPrediction> ReadPredictions(const std::filesystem::path& path);

}  // namespace coretag

#endif  // CORETAG_TAGGER_TAGGER_H_
