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

#include "coretag/eval/metrics.h"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "coretag/util/error.h"
#include "coretag/util/jsonl.h"

namespace coretag {
namespace {

std::vector<DocumentSpan> SortedUnique(std::span<const DocumentSpan> spans) {
  std::vector<DocumentSpan> out(spans.begin(), spans.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

double F1Score(double precision, double recall) {
  return precision + recall > 0.0
             ? 2.0 * precision * recall / (precision + recall)
             : 0.0;
}

double EvalReport::metric(const std::string& name) const {
  for (const auto& [k, v] : metrics) {
    if (k == name) return v;
  }
  throw Error(ErrorCode::kNotFound, "report has no metric '" + name + "'");
}

std::size_t EvalReport::count(const std::string& name) const {
  for (const auto& [k, v] : counts) {
    if (k == name) return v;
  }
  throw Error(ErrorCode::kNotFound, "report has no count '" + name + "'");
}

bool EvalReport::HasFlag(const std::string& flag) const {
  return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

std::string EvalReport::ToJson() const {
  nlohmann::ordered_json j;
  j["task"] = task;
  j["metrics"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : metrics) j["metrics"][k] = v;
  j["n_items"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : counts) j["n_items"][k] = v;
  j["flags"] = flags;
  j["config"] = nlohmann::ordered_json::parse(config_json);
  return j.dump(2);
}

void EvalReport::Write(const std::filesystem::path& path) const {
  WriteTextFile(path, ToJson() + "\n");
}

std::vector<DocumentSpan> GoldDocumentSpans(const std::vector<GoldSentenceSpans>& gold) {
  std::vector<DocumentSpan> out;
  for (const GoldSentenceSpans& g : gold) {
    for (const auto& [start, end] : g.spans) {
      out.push_back({g.id, {g.sent_idx, start, end}});
    }
  }
  return out;
}

std::vector<DocumentSpan> PredictedDocumentSpans(
    const std::vector<DocumentPrediction>& predictions) {
  std::vector<DocumentSpan> out;
  out.reserve(predictions.size());
  for (const DocumentPrediction& p : predictions) {
    out.push_back({p.doc_id, p.prediction.span});
  }
  return out;
}

TaggingCounts& TaggingCounts::operator+=(const TaggingCounts& other) {
  matched += other.matched;
  predicted += other.predicted;
  gold += other.gold;
  return *this;
}

TaggingCounts CountTagging(std::span<const DocumentSpan> predicted,
                           std::span<const DocumentSpan> gold) {
  const std::vector<DocumentSpan> p = SortedUnique(predicted);
  const std::vector<DocumentSpan> g = SortedUnique(gold);
  std::vector<DocumentSpan> both;
  std::set_intersection(p.begin(), p.end(), g.begin(), g.end(),
                        std::back_inserter(both));
  return {both.size(), p.size(), g.size()};
}

EvalReport TaggingReport(const TaggingCounts& counts) {
  EvalReport r;
  r.task = "tagging";
  const double precision =
      counts.predicted ? static_cast<double>(counts.matched) / counts.predicted : 0.0;
  const double recall =
      counts.gold ? static_cast<double>(counts.matched) / counts.gold : 0.0;
  r.metrics = {{"precision", precision},
               {"recall", recall},
               {"f1", F1Score(precision, recall)}};
  r.counts = {{"matched", counts.matched},
              {"predicted", counts.predicted},
              {"gold", counts.gold}};
  if (counts.predicted == 0) r.flags.push_back("empty_predictions");
  if (counts.gold == 0) r.flags.push_back("empty_gold");
  return r;
}

EvalReport EvaluateTagging(std::span<const DocumentSpan> predicted,
                           std::span<const DocumentSpan> gold) {
  return TaggingReport(CountTagging(predicted, gold));
}

}  // namespace coretag
