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

#include "coretag/eval/keyphrase.h"

#include <algorithm>
#include <map>
#include <set>

#include "coretag/corpus/tokenizer.h"
#include "coretag/eval/stemmer.h"
#include "coretag/util/error.h"

namespace coretag {
namespace {

std::set<std::string> KeySet(const std::vector<std::string>& phrases, bool stem) {
  std::set<std::string> out;
  for (const std::string& p : phrases) {
    std::string key = KeyphraseKey(p, stem);
    if (!key.empty()) out.insert(std::move(key));
  }
  return out;
}

std::string JoinIds(const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size() && i < 20; ++i) {
    if (i) out += ", ";
    out += ids[i];
  }
  if (ids.size() > 20) out += ", ...";
  return out;
}

}  // namespace

std::string KeyphraseKey(const std::string& phrase, bool stem) {
  std::string key = NormalizePhrase(phrase);
  return stem ? StemPhrase(key) : key;
}

std::vector<KeyphraseDocumentScore> ScoreKeyphrases(
    const std::vector<KeyphrasePrediction>& predictions,
    const std::vector<GoldKeyphrases>& gold, const KeyphraseOptions& options) {
  if (options.top_k == 0) {
    throw Error(ErrorCode::kInvalidArgument, "top_k must be positive");
  }
  std::map<std::string, const KeyphrasePrediction*> by_id;
  for (const KeyphrasePrediction& p : predictions) by_id[p.doc_id] = &p;
  std::set<std::string> gold_ids;
  for (const GoldKeyphrases& g : gold) gold_ids.insert(g.id);

  std::vector<std::string> only_pred, only_gold;
  for (const auto& [id, p] : by_id) {
    if (!gold_ids.count(id)) only_pred.push_back(id);
  }
  for (const std::string& id : gold_ids) {
    if (!by_id.count(id)) only_gold.push_back(id);
  }
  if (!only_pred.empty() || !only_gold.empty()) {
    std::string msg = "document ids differ between predictions and gold";
    if (!only_gold.empty()) msg += "; missing predictions: " + JoinIds(only_gold);
    if (!only_pred.empty()) msg += "; missing gold: " + JoinIds(only_pred);
    throw Error(ErrorCode::kInvalidArgument, msg);
  }

  std::vector<KeyphraseDocumentScore> out;
  for (const GoldKeyphrases& g : gold) {
    const std::set<std::string> gold_keys = KeySet(g.keyphrases, options.stem);
    if (gold_keys.empty()) continue;
    const KeyphrasePrediction& p = *by_id.at(g.id);
    const std::set<std::string> candidates = KeySet(p.candidates, options.stem);

    std::set<std::string> top;
    for (const std::string& phrase : p.ranked) {
      if (top.size() == options.top_k) break;
      std::string key = KeyphraseKey(phrase, options.stem);
      if (!key.empty()) top.insert(std::move(key));
    }

    std::size_t candidate_hits = 0;
    std::size_t top_hits = 0;
    for (const std::string& k : gold_keys) {
      candidate_hits += candidates.count(k);
      top_hits += top.count(k);
    }
    KeyphraseDocumentScore s;
    s.doc_id = g.id;
    const double n_gold = static_cast<double>(gold_keys.size());
    s.recall = static_cast<double>(candidate_hits) / n_gold;
    s.precision = static_cast<double>(top_hits) / static_cast<double>(options.top_k);
    s.f1 = F1Score(s.precision, static_cast<double>(top_hits) / n_gold);
    out.push_back(std::move(s));
  }
  return out;
}

EvalReport EvaluateKeyphrase(const std::vector<KeyphrasePrediction>& predictions,
                             const std::vector<GoldKeyphrases>& gold,
                             const KeyphraseOptions& options) {
  const auto scores = ScoreKeyphrases(predictions, gold, options);
  double recall = 0.0;
  double f1 = 0.0;
  for (const auto& s : scores) {
    recall += s.recall;
    f1 += s.f1;
  }
  if (!scores.empty()) {
    recall /= static_cast<double>(scores.size());
    f1 /= static_cast<double>(scores.size());
  }
  EvalReport r;
  r.task = "keyphrase";
  r.metrics = {{"recall", recall},
               {"f1_at_" + std::to_string(options.top_k), f1}};
  r.counts = {{"documents", scores.size()},
              {"skipped_empty_gold", gold.size() - scores.size()}};
  if (scores.empty()) r.flags.push_back("no_scored_documents");
  return r;
}

}  // namespace coretag
