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

#ifndef CORETAG_EVAL_METRICS_H_
#define CORETAG_EVAL_METRICS_H_

#include <compare>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coretag/corpus/gold.h"
#include "coretag/labelgen/labels.h"
#include "coretag/tagger/tagger.h"

namespace coretag {

// F1 = 2PR / (P + R), 0 when P + R = 0.
double F1Score(double precision, double recall);

struct EvalReport {
  std::string task;  // "ranking" | "keyphrase" | "tagging"
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::pair<std::string, std::size_t>> counts;
  std::vector<std::string> flags;
  std::string config_json = "{}";  // resolved configuration echo

  // Throws Error(kNotFound) for an unknown name.
  double metric(const std::string& name) const;
  std::size_t count(const std::string& name) const;
  bool HasFlag(const std::string& flag) const;

  std::string ToJson() const;
  void Write(const std::filesystem::path& path) const;
};

// A span anchored to a document, the unit of exact-match tagging evaluation.
struct DocumentSpan {
  std::string doc_id;
  Span span;

  auto operator<=>(const DocumentSpan&) const = default;
};

std::vector<DocumentSpan> GoldDocumentSpans(const std::vector<GoldSentenceSpans>& gold);
std::vector<DocumentSpan> PredictedDocumentSpans(
    const std::vector<DocumentPrediction>& predictions);

struct TaggingCounts {
  std::size_t matched = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;

  TaggingCounts& operator+=(const TaggingCounts& other);
  bool operator==(const TaggingCounts&) const = default;
};

// Exact-match counts; duplicate spans are counted once.
TaggingCounts CountTagging(std::span<const DocumentSpan> predicted,
                           std::span<const DocumentSpan> gold);

// Micro precision/recall/f1. With no predictions precision is reported as 0
// and the flag "empty_predictions" is set.
EvalReport TaggingReport(const TaggingCounts& counts);
EvalReport EvaluateTagging(std::span<const DocumentSpan> predicted,
                           std::span<const DocumentSpan> gold);

}  // namespace coretag

#endif  // CORETAG_EVAL_METRICS_H_
