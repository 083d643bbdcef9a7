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

#ifndef CORETAG_CLASSIFIER_TRAINER_H_
#define CORETAG_CLASSIFIER_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "coretag/attnfeat/providers.h"
#include "coretag/classifier/model.h"
#include "coretag/corpus/corpus.h"
#include "coretag/labelgen/labels.h"

namespace coretag {

struct TrainConfig {
  double learning_rate = 0.001;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  std::size_t batch_size = 128;
  std::size_t max_epochs = 50;
  double validation_fraction = 0.10;
  std::uint64_t seed = 0;
  std::size_t k_max = 6;
  double decision_threshold = 0.5;

  // Throws Error(kInvalidArgument) naming the offending field.
  void Validate() const;

  AdamConfig Adam() const {
    return {learning_rate, adam_beta1, adam_beta2, adam_eps};
  }

  std::string ToJson() const;
  static TrainConfig FromJson(const std::string& text);

  bool operator==(const TrainConfig&) const = default;
};

inline constexpr std::size_t kMinLabelsPerPolarity = 10;

// Labeled crops grouped by document, ready for training.
struct ExampleSet {
  std::vector<std::string> doc_ids;  // parallel to examples
  std::vector<Example> examples;
  std::size_t truncated = 0;  // labels past the sentence truncation limit

  std::size_t size() const { return examples.size(); }
  std::size_t CountLabel(float label) const;
};

// Fetches one crop per label. Labels reaching past the truncated sentence
// length are dropped and counted.
// Errors: label naming an unknown document or sentence -> kNotFound; spans
// longer than k_max -> kInvalidArgument; provider misses -> kNotFound listing
// the missing sentence keys.
ExampleSet BuildExamples(const LabelSet& labels, const std::vector<Document>& docs,
                         const AttentionProvider& provider, std::size_t k_max,
                         int threads = 1);

struct ClassificationCounts {
  std::size_t true_positive = 0;
  std::size_t predicted = 0;
  std::size_t actual = 0;

  double Precision() const;
  double Recall() const;
  double F1() const;
};

ClassificationCounts Evaluate(const ModelParams& params,
                              const std::vector<Example>& examples,
                              double threshold);

struct EpochMetrics {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double val_p = 0.0;
  double val_r = 0.0;
  double val_f1 = 0.0;
};

struct TrainHooks {
  // Replaces the measured validation F1 (used to script trajectories).
  std::function<double(std::size_t epoch, double measured)> validation_f1;
  std::function<void(const EpochMetrics&)> on_epoch_end;
};

struct TrainResult {
  ModelParams params;
  std::size_t best_epoch = 0;
  double best_val_f1 = 0.0;
  std::vector<EpochMetrics> history;
  std::size_t train_examples = 0;
  std::size_t validation_examples = 0;
  std::size_t train_docs = 0;
  std::size_t validation_docs = 0;
};

// Splits document-wise, trains with Adam, stops the first time validation F1
// drops below the previous epoch's and returns the best epoch's parameters
// (the latest one among equal scores).
// Errors: fewer than kMinLabelsPerPolarity positives or negatives, or fewer
// than two documents -> kFailedPrecondition.
TrainResult Train(const ExampleSet& data, const TrainConfig& config,
                  const TrainHooks& hooks = {});

// Document-wise split; returns the validation document ids, sorted.
std::vector<std::string> ValidationDocuments(std::vector<std::string> doc_ids,
                                             double fraction, std::uint64_t seed);

void WriteTrainingReport(const std::filesystem::path& path,
                         const std::vector<EpochMetrics>& history);
std::string EpochMetricsJson(const EpochMetrics& m);

}  // namespace coretag

#endif  // CORETAG_CLASSIFIER_TRAINER_H_
