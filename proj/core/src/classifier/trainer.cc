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

#include "coretag/classifier/trainer.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <utility>

#include <nlohmann/json.hpp>

#include "coretag/util/error.h"
#include "coretag/util/hash.h"
#include "coretag/util/jsonl.h"
#include "coretag/util/parallel.h"
#include "coretag/util/rng.h"

namespace coretag {
namespace {

using ordered_json = nlohmann::ordered_json;

void Require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, "train config: " + what);
}

std::string JoinLimited(const std::vector<std::string>& items, std::size_t limit) {
  std::string out;
  for (std::size_t i = 0; i < items.size() && i < limit; ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  if (items.size() > limit) {
    out += ", ... (" + std::to_string(items.size() - limit) + " more)";
  }
  return out;
}

}  // namespace

void TrainConfig::Validate() const {
  Require(std::isfinite(learning_rate) && learning_rate > 0.0,
          "learning_rate must be > 0");
  Require(adam_beta1 >= 0.0 && adam_beta1 < 1.0, "adam_beta1 must be in [0, 1)");
  Require(adam_beta2 >= 0.0 && adam_beta2 < 1.0, "adam_beta2 must be in [0, 1)");
  Require(adam_eps > 0.0, "adam_eps must be > 0");
  Require(batch_size > 0, "batch_size must be > 0");
  Require(max_epochs > 0, "max_epochs must be > 0");
  Require(validation_fraction > 0.0 && validation_fraction < 1.0,
          "validation_fraction must be in (0, 1)");
  Require(k_max >= kMinSpanLength, "k_max must be >= 2");
  Require(decision_threshold >= 0.0 && std::isfinite(decision_threshold),
          "decision_threshold must be >= 0");
}

std::string TrainConfig::ToJson() const {
  ordered_json j = {
      {"learning_rate", learning_rate},
      {"adam_beta1", adam_beta1},
      {"adam_beta2", adam_beta2},
      {"adam_eps", adam_eps},
      {"batch_size", batch_size},
      {"max_epochs", max_epochs},
      {"validation_fraction", validation_fraction},
      {"seed", seed},
      {"k_max", k_max},
      {"decision_threshold", decision_threshold},
  };
  return j.dump();
}

TrainConfig TrainConfig::FromJson(const std::string& text) {
  TrainConfig c;
  try {
    auto j = nlohmann::json::parse(text);
    c.learning_rate = j.at("learning_rate").get<double>();
    c.adam_beta1 = j.at("adam_beta1").get<double>();
    c.adam_beta2 = j.at("adam_beta2").get<double>();
    c.adam_eps = j.at("adam_eps").get<double>();
    c.batch_size = j.at("batch_size").get<std::size_t>();
    c.max_epochs = j.at("max_epochs").get<std::size_t>();
    c.validation_fraction = j.at("validation_fraction").get<double>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.k_max = j.at("k_max").get<std::size_t>();
    c.decision_threshold = j.at("decision_threshold").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("bad train config: ") + e.what());
  }
  return c;
}

std::size_t ExampleSet::CountLabel(float label) const {
  return static_cast<std::size_t>(
      std::count_if(examples.begin(), examples.end(),
                    [label](const Example& e) { return e.label == label; }));
}

ExampleSet BuildExamples(const LabelSet& labels, const std::vector<Document>& docs,
                         const AttentionProvider& provider, std::size_t k_max,
                         int threads) {
  std::unordered_map<std::string, const Document*> by_id;
  for (const Document& d : docs) by_id.emplace(d.id, &d);

  // One group per sentence, in first-seen order of the sorted label set.
  std::map<SentenceKey, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const SpanLabel& l = labels[i];
    auto it = by_id.find(l.doc_id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::kNotFound, "label refers to unknown document '" +
                                            l.doc_id + "'");
    }
    if (l.span.sent_idx >= it->second->sentences.size()) {
      throw Error(ErrorCode::kNotFound,
                  "label refers to missing sentence " +
                      SentenceKey{l.doc_id, l.span.sent_idx}.ToString());
    }
    if (l.span.length() < kMinSpanLength || l.span.length() > k_max) {
      throw Error(ErrorCode::kInvalidArgument,
                  "label span length " + std::to_string(l.span.length()) +
                      " outside [2, " + std::to_string(k_max) + "] at " +
                      SentenceKey{l.doc_id, l.span.sent_idx}.ToString());
    }
    groups[SentenceKey{l.doc_id, l.span.sent_idx}].push_back(i);
  }

  std::vector<const std::pair<const SentenceKey, std::vector<std::size_t>>*> order;
  order.reserve(groups.size());
  for (const auto& g : groups) order.push_back(&g);

  std::vector<std::optional<SpanFeature>> features(labels.size());
  std::vector<char> missing(order.size(), 0);
  ParallelFor(order.size(), threads, [&](std::size_t gi) {
    const SentenceKey& key = order[gi]->first;
    const Document& doc = *by_id.at(key.doc_id);
    const SentenceTokens& sentence = doc.sentences[key.sent_idx];
    AttentionTensor tensor;
    try {
      tensor = ComputeAttention(provider, key, sentence);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNotFound) throw;
      missing[gi] = 1;
      return;
    }
    for (std::size_t li : order[gi]->second) {
      const Span& span = labels[li].span;
      if (span.end > tensor.n_words()) continue;
      features[li] = ExtractSpanFeature(tensor, span);
    }
  });

  std::vector<std::string> missing_keys;
  for (std::size_t gi = 0; gi < order.size(); ++gi) {
    if (missing[gi]) missing_keys.push_back(order[gi]->first.ToString());
  }
  if (!missing_keys.empty()) {
    throw Error(ErrorCode::kNotFound,
                "attention missing for " + std::to_string(missing_keys.size()) +
                    " sentence(s): " + JoinLimited(missing_keys, 20));
  }

  ExampleSet out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!features[i]) {
      ++out.truncated;
      continue;
    }
    out.doc_ids.push_back(labels[i].doc_id);
    out.examples.push_back(
        {std::move(*features[i]),
         labels[i].polarity == Polarity::kPositive ? 1.0f : 0.0f});
  }
  return out;
}

double ClassificationCounts::Precision() const {
  return predicted ? static_cast<double>(true_positive) / predicted : 0.0;
}

double ClassificationCounts::Recall() const {
  return actual ? static_cast<double>(true_positive) / actual : 0.0;
}

double ClassificationCounts::F1() const {
  const double p = Precision();
  const double r = Recall();
  return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

ClassificationCounts Evaluate(const ModelParams& params,
                              const std::vector<Example>& examples,
                              double threshold) {
  ClassificationCounts c;
  for (const Example& ex : examples) {
    const bool predicted = Forward(params, ex.feature).probability >= threshold;
    const bool actual = ex.label == 1.0f;
    c.predicted += predicted;
    c.actual += actual;
    c.true_positive += predicted && actual;
  }
  return c;
}

std::vector<std::string> ValidationDocuments(std::vector<std::string> doc_ids,
                                             double fraction, std::uint64_t seed) {
  std::sort(doc_ids.begin(), doc_ids.end());
  doc_ids.erase(std::unique(doc_ids.begin(), doc_ids.end()), doc_ids.end());
  if (doc_ids.size() < 2) {
    throw Error(ErrorCode::kFailedPrecondition,
                "document-wise validation split needs at least 2 documents, got " +
                    std::to_string(doc_ids.size()));
  }
  auto n_val = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(doc_ids.size())));
  n_val = std::clamp<std::size_t>(n_val, 1, doc_ids.size() - 1);
  Rng rng(DeriveSeed(seed, "validation-split"));
  rng.Shuffle(std::span<std::string>(doc_ids));
  doc_ids.resize(n_val);
  std::sort(doc_ids.begin(), doc_ids.end());
  return doc_ids;
}

TrainResult Train(const ExampleSet& data, const TrainConfig& config,
                  const TrainHooks& hooks) {
  config.Validate();
  const std::size_t positives = data.CountLabel(1.0f);
  const std::size_t negatives = data.CountLabel(0.0f);
  if (positives < kMinLabelsPerPolarity || negatives < kMinLabelsPerPolarity) {
    throw Error(ErrorCode::kFailedPrecondition,
                "training needs at least " + std::to_string(kMinLabelsPerPolarity) +
                    " positive and " + std::to_string(kMinLabelsPerPolarity) +
                    " negative labels, got " + std::to_string(positives) +
                    " positive and " + std::to_string(negatives) + " negative");
  }

  const std::vector<std::string> val_docs =
      ValidationDocuments(data.doc_ids, config.validation_fraction, config.seed);
  const std::set<std::string> val_set(val_docs.begin(), val_docs.end());
  std::vector<Example> train, validation;
  std::set<std::string> train_docs;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (val_set.count(data.doc_ids[i])) {
      validation.push_back(data.examples[i]);
    } else {
      train.push_back(data.examples[i]);
      train_docs.insert(data.doc_ids[i]);
    }
  }

  Architecture arch;
  arch.channels = data.examples.front().feature.channels;
  arch.k_max = config.k_max;
  CheckArchitecture(arch);

  TrainResult result;
  result.train_examples = train.size();
  result.validation_examples = validation.size();
  result.train_docs = train_docs.size();
  result.validation_docs = val_docs.size();

  ModelParams params = InitializeParams(arch, DeriveSeed(config.seed, "init"));
  AdamState state(arch);
  const AdamConfig adam = config.Adam();
  Rng shuffle_rng(DeriveSeed(config.seed, "shuffle"));
  std::vector<std::size_t> order(train.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  result.params = params;
  bool have_best = false;
  double previous_f1 = 0.0;
  std::vector<Example> batch;
  batch.reserve(config.batch_size);
  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    shuffle_rng.Shuffle(std::span<std::size_t>(order));
    double loss_sum = 0.0;
    for (std::size_t b = 0; b < order.size(); b += config.batch_size) {
      const std::size_t e = std::min(order.size(), b + config.batch_size);
      batch.clear();
      for (std::size_t i = b; i < e; ++i) batch.push_back(train[order[i]]);
      loss_sum += TrainStep(params, state, batch, adam) *
                  static_cast<double>(batch.size());
    }

    EpochMetrics m;
    m.epoch = epoch;
    m.train_loss = train.empty() ? 0.0 : loss_sum / static_cast<double>(train.size());
    const ClassificationCounts counts =
        Evaluate(params, validation, config.decision_threshold);
    m.val_p = counts.Precision();
    m.val_r = counts.Recall();
    m.val_f1 = counts.F1();
    if (hooks.validation_f1) m.val_f1 = hooks.validation_f1(epoch, m.val_f1);
    result.history.push_back(m);
    if (hooks.on_epoch_end) hooks.on_epoch_end(m);

    if (!have_best || m.val_f1 >= result.best_val_f1) {
      have_best = true;
      result.best_val_f1 = m.val_f1;
      result.best_epoch = epoch;
      result.params = params;
    }
    if (epoch > 1 && m.val_f1 < previous_f1) break;
    previous_f1 = m.val_f1;
  }
  return result;
}

std::string EpochMetricsJson(const EpochMetrics& m) {
  ordered_json j = {{"epoch", m.epoch},
                    {"train_loss", m.train_loss},
                    {"val_p", m.val_p},
                    {"val_r", m.val_r},
                    {"val_f1", m.val_f1}};
  return j.dump();
}

void WriteTrainingReport(const std::filesystem::path& path,
                         const std::vector<EpochMetrics>& history) {
  LineWriter out(path);
  for (const EpochMetrics& m : history) out.Write(EpochMetricsJson(m));
  out.Close();
}

}  // namespace coretag
