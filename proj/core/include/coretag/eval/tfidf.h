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

#ifndef CORETAG_EVAL_TFIDF_H_
#define CORETAG_EVAL_TFIDF_H_

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "coretag/corpus/corpus.h"
#include "coretag/labelgen/labels.h"

namespace coretag {

struct PhraseCount {
  std::string phrase;
  std::size_t count = 0;
  std::size_t first_position = 0;  // document word index of first occurrence
};

// Candidate phrases of one document in first-occurrence order.
struct DocumentPhrases {
  std::string doc_id;
  std::vector<PhraseCount> phrases;
};

// Groups spans of `doc` by their surface form.
DocumentPhrases CollectDocumentPhrases(const Document& doc,
                                       std::span<const Span> spans);

class DocumentFrequency {
 public:
  DocumentFrequency() = default;
  explicit DocumentFrequency(std::span<const DocumentPhrases> corpus);

  std::size_t documents() const { return documents_; }
  std::size_t df(const std::string& phrase) const;

  // log((1 + M) / (1 + df)) + 1
  double Idf(const std::string& phrase) const;

 private:
  std::size_t documents_ = 0;
  std::unordered_map<std::string, std::size_t> df_;
};

struct ScoredPhrase {
  std::string phrase;
  double score = 0.0;
  std::size_t count = 0;
  std::size_t first_position = 0;

  bool operator==(const ScoredPhrase&) const = default;
};

// Scores tf * idf, descending; ties by earlier first occurrence, then
// lexicographically. top_k = 0 keeps everything.
std::vector<ScoredPhrase> TfidfRank(const DocumentPhrases& doc,
                                    const DocumentFrequency& df,
                                    std::size_t top_k = 0);

}  // namespace coretag

#endif  // CORETAG_EVAL_TFIDF_H_
