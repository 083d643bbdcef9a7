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

#include "coretag/attnfeat/providers.h"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

#include "coretag/util/error.h"
#include "coretag/util/hash.h"
#include "coretag/util/jsonl.h"

namespace coretag {
namespace {

// Softmax of `logits` written into a float row, computed in double.
void SoftmaxInto(const std::vector<double>& logits, std::span<float> out) {
  const double peak = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  std::vector<double> e(logits.size());
  for (std::size_t j = 0; j < logits.size(); ++j) {
    e[j] = std::exp(logits[j] - peak);
    total += e[j];
  }
  for (std::size_t j = 0; j < logits.size(); ++j) {
    out[j] = static_cast<float>(e[j] / total);
  }
}

std::vector<std::uint64_t> TokenHashes(std::span<const std::string> words) {
  std::vector<std::uint64_t> hashes(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    hashes[i] = HashCombine(Fnv1a64(words[i]), i);
  }
  return hashes;
}

// Uniform in [-1, 1] from (seed, layer, head, row token@pos, col token@pos).
double CellNoise(std::uint64_t seed, std::size_t layer, std::size_t head,
                 std::uint64_t row_hash, std::uint64_t col_hash) {
  std::uint64_t h = HashCombine(seed, layer);
  h = HashCombine(h, head);
  h = HashCombine(h, row_hash);
  h = HashCombine(h, col_hash);
  return 2.0 * HashToUnit(h) - 1.0;
}

}  // namespace

AttentionTensor ComputeAttention(const AttentionProvider& provider,
                                 const SentenceKey& key,
                                 const SentenceTokens& sentence) {
  if (sentence.words.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot compute attention for empty sentence " + key.ToString());
  }
  std::span<const std::string> words(sentence.words.data(),
                                     TruncatedLength(sentence));
  return provider.Compute(key, words);
}

HashAttentionProvider::HashAttentionProvider(std::uint64_t seed,
                                             std::size_t layers,
                                             std::size_t heads, double scale)
    : seed_(seed), layers_(layers), heads_(heads), scale_(scale) {
  if (layers == 0 || heads == 0 || layers > 255 || heads > 255) {
    throw Error(ErrorCode::kInvalidArgument, "layers and heads must be in [1, 255]");
  }
}

AttentionTensor HashAttentionProvider::Compute(
    const SentenceKey& key, std::span<const std::string> words) const {
  const std::size_t n = words.size();
  AttentionTensor tensor(key, n, layers_, heads_);
  const auto hashes = TokenHashes(words);
  std::vector<double> logits(n);
  for (std::size_t l = 0; l < layers_; ++l) {
    for (std::size_t h = 0; h < heads_; ++h) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          logits[j] = scale_ * CellNoise(seed_, l, h, hashes[i], hashes[j]);
        }
        SoftmaxInto(logits, tensor.row(l, h, i));
      }
    }
  }
  return tensor;
}

std::string HashAttentionProvider::Describe() const {
  return "synthetic-hash(seed=" + std::to_string(seed_) +
         ",layers=" + std::to_string(layers_) +
         ",heads=" + std::to_string(heads_) + ")";
}

std::string PlantedAttentionParams::ToJson() const {
  nlohmann::ordered_json j = {
      {"provider", "synthetic-planted"},
      {"seed", seed},
      {"delta", delta},
      {"noise", noise},
      {"layers", layers},
      {"heads", heads},
      {"phrases", phrases},
  };
  return j.dump(2);
}

PlantedAttentionParams PlantedAttentionParams::FromJson(const std::string& text) {
  try {
    auto j = nlohmann::json::parse(text);
    PlantedAttentionParams p;
    p.seed = j.at("seed").get<std::uint64_t>();
    p.delta = j.at("delta").get<double>();
    p.noise = j.at("noise").get<double>();
    p.layers = j.at("layers").get<std::size_t>();
    p.heads = j.at("heads").get<std::size_t>();
    p.phrases = j.at("phrases").get<std::vector<std::vector<std::string>>>();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat,
                std::string("bad planted-attention parameters: ") + e.what());
  }
}

PlantedAttentionParams PlantedAttentionParams::Load(
    const std::filesystem::path& path) {
  return FromJson(ReadTextFile(path));
}

void PlantedAttentionParams::Save(const std::filesystem::path& path) const {
  WriteTextFile(path, ToJson() + "\n");
}

PlantedAttentionProvider::PlantedAttentionProvider(PlantedAttentionParams params)
    : params_(std::move(params)) {
  if (params_.layers == 0 || params_.heads == 0 || params_.layers > 255 ||
      params_.heads > 255) {
    throw Error(ErrorCode::kInvalidArgument, "layers and heads must be in [1, 255]");
  }
  if (params_.delta < 0 || params_.noise < 0) {
    throw Error(ErrorCode::kInvalidArgument, "delta and noise must be >= 0");
  }
  for (const auto& phrase : params_.phrases) bank_.AddTokens(phrase);
}

std::vector<std::pair<std::size_t, std::size_t>>
PlantedAttentionProvider::PlantedSpans(std::span<const std::string> words) const {
  return bank_.Match(words, std::max<std::size_t>(bank_.max_length(), 2));
}

AttentionTensor PlantedAttentionProvider::Compute(
    const SentenceKey& key, std::span<const std::string> words) const {
  const std::size_t n = words.size();
  AttentionTensor tensor(key, n, params_.layers, params_.heads);
  const auto hashes = TokenHashes(words);

  // Phrase extent of each word; {i, i + 1} marks a word outside any phrase.
  std::vector<std::pair<std::size_t, std::size_t>> group(n);
  std::vector<char> planted(n, 0);
  for (std::size_t i = 0; i < n; ++i) group[i] = {i, i + 1};
  for (const auto& [s, e] : PlantedSpans(words)) {
    for (std::size_t i = s; i < e; ++i) {
      group[i] = {s, e};
      planted[i] = 1;
    }
  }

  std::vector<double> logits(n);
  for (std::size_t l = 0; l < params_.layers; ++l) {
    for (std::size_t h = 0; h < params_.heads; ++h) {
      const std::size_t pattern = (l * params_.heads + h) % 4;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          logits[j] = params_.noise * CellNoise(params_.seed, l, h, hashes[i], hashes[j]);
        }
        if (planted[i]) {
          const auto [s, e] = group[i];
          switch (pattern) {
            case 0:
              for (std::size_t j = s; j < e; ++j) logits[j] += params_.delta;
              break;
            case 1:
              logits[i > s ? i - 1 : i] += params_.delta;
              break;
            case 2:
              logits[i + 1 < e ? i + 1 : i] += params_.delta;
              break;
            default:
              break;
          }
        }
        SoftmaxInto(logits, tensor.row(l, h, i));
      }
    }
  }
  return tensor;
}

std::string PlantedAttentionProvider::Describe() const {
  char delta[32];
  std::snprintf(delta, sizeof(delta), "%g", params_.delta);
  return "synthetic-planted(seed=" + std::to_string(params_.seed) +
         ",delta=" + delta + ",phrases=" + std::to_string(params_.phrases.size()) +
         ")";
}

ArchiveAttentionProvider::ArchiveAttentionProvider(
    std::shared_ptr<const ArchiveReader> reader)
    : reader_(std::move(reader)) {
  if (auto shape = reader_->FirstShape()) {
    layers_ = shape->layers;
    heads_ = shape->heads;
  }
}

std::unique_ptr<ArchiveAttentionProvider> ArchiveAttentionProvider::Open(
    const std::filesystem::path& path) {
  return std::make_unique<ArchiveAttentionProvider>(
      std::make_shared<const ArchiveReader>(ArchiveReader::Open(path)));
}

AttentionTensor ArchiveAttentionProvider::Compute(
    const SentenceKey& key, std::span<const std::string> words) const {
  AttentionTensor tensor = reader_->Read(key);
  if (tensor.n_words() != words.size()) {
    throw Error(ErrorCode::kFormat,
                "archive tensor for " + key.ToString() + " has " +
                    std::to_string(tensor.n_words()) + " words, sentence has " +
                    std::to_string(words.size()));
  }
  if (tensor.layers() != layers_ || tensor.heads() != heads_) {
    throw Error(ErrorCode::kFormat,
                "archive tensor for " + key.ToString() +
                    " has a different layer/head count than the archive");
  }
  return tensor;
}

std::string ArchiveAttentionProvider::Describe() const {
  return "archive(tensors=" + std::to_string(reader_->size()) +
         ",layers=" + std::to_string(layers_) +
         ",heads=" + std::to_string(heads_) + ")";
}

}  // namespace coretag
