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

#ifndef CORETAG_EVAL_RANKING_H_
#define CORETAG_EVAL_RANKING_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "coretag/corpus/corpus.h"
#include "coretag/eval/metrics.h"
#include "coretag/tagger/tagger.h"

namespace coretag {

struct PhraseOccurrence {
  std::string phrase;  // lowercase, space-joined words
  double logit = 0.0;
};

// Surface forms of predictions. Errors: unknown doc id or out-of-range span
// -> kInvalidArgument.
std::vector<PhraseOccurrence> PredictionOccurrences(
    const std::vector<Document>& docs,
    const std::vector<DocumentPrediction>& predictions);

struct RankedPhrase {
  std::string phrase;
  double score = 0.0;  // mean logit
  std::size_t count = 0;

  bool operator==(const RankedPhrase&) const = default;
};

// Mean logit per surface form, descending; ties by higher count, then
// lexicographically.
std::vector<RankedPhrase> RankPhrasesGlobal(std::span<const PhraseOccurrence> occ);

// JSON Lines {"rank", "phrase", "score", "count"}.
void WriteRanking(const std::filesystem::path& path,
                  std::span<const RankedPhrase> ranking);
std::vector<RankedPhrase> ReadRanking(const std::filesystem::path& path);

// Seeded sample without replacement from the first `pool` phrases (0 = all),
// returned in rank order.
std::vector<std::string> SampleForAnnotation(std::span<const RankedPhrase> ranking,
                                             std::size_t pool, std::size_t n,
                                             std::uint64_t seed);

// One phrase per line.
void WriteAnnotationSample(const std::filesystem::path& path,
                           std::span<const std::string> phrases);

// Lines "phrase<TAB>0|1". Errors: malformed line or conflicting duplicate
// -> kFormat naming the line.
std::map<std::string, bool> ReadAnnotations(const std::filesystem::path& path);

// Precision over the annotated phrases among the top k of the ranking.
// Unannotated phrases are counted in "unannotated" and excluded.
EvalReport PrecisionAtK(std::span<const RankedPhrase> ranking,
                        const std::map<std::string, bool>& annotations,
                        std::span<const std::size_t> ks);

}  // namespace coretag

#endif  // CORETAG_EVAL_RANKING_H_
