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

#ifndef CORETAG_ATTNFEAT_PROVIDERS_H_
#define CORETAG_ATTNFEAT_PROVIDERS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "coretag/attnfeat/archive.h"
#include "coretag/attnfeat/attention.h"
#include "coretag/corpus/tokenizer.h"
#include "coretag/labelgen/gazetteer.h"

namespace coretag {

// Source of word-level attention tensors. Implementations are immutable
// after construction and safe to query from several threads.
class AttentionProvider {
 public:
  virtual ~AttentionProvider() = default;

  virtual std::size_t layers() const = 0;
  virtual std::size_t heads() const = 0;
  std::size_t channels() const { return layers() * heads(); }

  // `words` is already truncated to kMaxSentenceWords.
  virtual AttentionTensor Compute(const SentenceKey& key,
                                  std::span<const std::string> words) const = 0;

  // Short identifier echoed into reports, e.g. "synthetic-hash(seed=7)".
  virtual std::string Describe() const = 0;
};

// Number of words attention is computed over: min(|sentence|, 64).
inline std::size_t TruncatedLength(const SentenceTokens& sentence) {
  return sentence.size() < kMaxSentenceWords ? sentence.size()
                                             : kMaxSentenceWords;
}

// Truncates the sentence to its first kMaxSentenceWords words and queries
// the provider. Throws Error(kInvalidArgument) for empty sentences.
AttentionTensor ComputeAttention(const AttentionProvider& provider,
                                 const SentenceKey& key,
                                 const SentenceTokens& sentence);

// Row logits are a seeded hash of (row token, row position, layer, head,
// column token, column position) scaled to [-scale, scale], then softmaxed.
class HashAttentionProvider : public AttentionProvider {
 public:
  explicit HashAttentionProvider(std::uint64_t seed,
                                 std::size_t layers = kDefaultLayers,
                                 std::size_t heads = kDefaultHeads,
                                 double scale = 2.0);

  std::size_t layers() const override { return layers_; }
  std::size_t heads() const override { return heads_; }
  AttentionTensor Compute(const SentenceKey& key,
                          std::span<const std::string> words) const override;
  std::string Describe() const override;

 private:
  std::uint64_t seed_;
  std::size_t layers_;
  std::size_t heads_;
  double scale_;
};

// Parameters of the planted-attention provider, stored as JSON next to a
// synthetic corpus.
struct PlantedAttentionParams {
  std::uint64_t seed = 0;
  double delta = 6.0;  // logit boost on planted cells
  double noise = 0.5;  // amplitude of the hashed logit noise
  std::size_t layers = kDefaultLayers;
  std::size_t heads = kDefaultHeads;
  std::vector<std::vector<std::string>> phrases;

  std::string ToJson() const;
  static PlantedAttentionParams FromJson(const std::string& text);
  static PlantedAttentionParams Load(const std::filesystem::path& path);
  void Save(const std::filesystem::path& path) const;
};

// Synthetic stand-in for a language model that "knows" a phrase bank.
//
// Bank phrases are located in the sentence (greedy longest-first). Every
// row gets hashed noise logits in [-noise, noise]. Rows of words inside a
// located phrase [s, e) additionally get +delta on one pattern per head,
// cycling over channels c = layer * heads + head:
//   c % 4 == 0  block: every column in [s, e)
//   c % 4 == 1  previous word in the phrase (the first word points at itself)
//   c % 4 == 2  next word in the phrase (the last word points at itself)
//   c % 4 == 3  nothing (noise-only head)
// With delta = 0 the tensor carries no phrase signal.
class PlantedAttentionProvider : public AttentionProvider {
 public:
  explicit PlantedAttentionProvider(PlantedAttentionParams params);

  std::size_t layers() const override { return params_.layers; }
  std::size_t heads() const override { return params_.heads; }
  AttentionTensor Compute(const SentenceKey& key,
                          std::span<const std::string> words) const override;
  std::string Describe() const override;

  // Phrase spans planted for a word sequence, sorted by start.
  std::vector<std::pair<std::size_t, std::size_t>> PlantedSpans(
      std::span<const std::string> words) const;

  const PlantedAttentionParams& params() const { return params_; }

 private:
  PlantedAttentionParams params_;
  Gazetteer bank_;
};

// Reads tensors verbatim from an attention archive. The tensor's word count
// must equal the truncated sentence length.
class ArchiveAttentionProvider : public AttentionProvider {
 public:
  explicit ArchiveAttentionProvider(std::shared_ptr<const ArchiveReader> reader);
  static std::unique_ptr<ArchiveAttentionProvider> Open(
      const std::filesystem::path& path);

  std::size_t layers() const override { return layers_; }
  std::size_t heads() const override { return heads_; }
  AttentionTensor Compute(const SentenceKey& key,
                          std::span<const std::string> words) const override;
  std::string Describe() const override;

  const ArchiveReader& reader() const { return *reader_; }

 private:
  std::shared_ptr<const ArchiveReader> reader_;
  std::size_t layers_ = 0;
  std::size_t heads_ = 0;
};

}  // namespace coretag

#endif  // CORETAG_ATTNFEAT_PROVIDERS_H_
