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

#ifndef CORETAG_EVAL_KEYPHRASE_H_
#define CORETAG_EVAL_KEYPHRASE_H_

#include <cstddef>
#include <string>
#include <vector>

#include "coretag/corpus/gold.h"
#include "coretag/eval/metrics.h"

namespace coretag {

struct KeyphraseOptions {
  std::size_t top_k = 10;
  bool stem = false;
};

// Extracted phrases of one document: every candidate, plus the ranked list
// whose first top_k entries are scored.
struct KeyphrasePrediction {
  std::string doc_id;
  std::vector<std::string> candidates;
  std::vector<std::string> ranked;
};

// Lowercased, tokenizer-normalized and optionally stemmed phrase.
std::string KeyphraseKey(const std::string& phrase, bool stem);

struct KeyphraseDocumentScore {
  std::string doc_id;
  double recall = 0.0;    // |gold & candidates| / |gold|
  double precision = 0.0;  // top-k hits / top_k
  double f1 = 0.0;         // from precision and top-k hits / |gold|
};

// Per-document scores for documents with non-empty gold.
// Errors: prediction and gold doc-id sets differ -> kInvalidArgument listing
// the ids.
std::vector<KeyphraseDocumentScore> ScoreKeyphrases(
    const std::vector<KeyphrasePrediction>& predictions,
    const std::vector<GoldKeyphrases>& gold, const KeyphraseOptions& options);

// Macro means "recall" and "f1_at_10" (the name follows top_k).
EvalReport EvaluateKeyphrase(const std::vector<KeyphrasePrediction>& predictions,
                             const std::vector<GoldKeyphrases>& gold,
                             const KeyphraseOptions& options = {});

}  // namespace coretag

#endif  // CORETAG_EVAL_KEYPHRASE_H_
