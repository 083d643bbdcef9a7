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

#ifndef CORETAG_ATTNFEAT_ATTENTION_H_
#define CORETAG_ATTNFEAT_ATTENTION_H_

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coretag/labelgen/labels.h"

namespace coretag {

// Sentences are truncated to this many words before attention is computed.
inline constexpr std::size_t kMaxSentenceWords = 64;
inline constexpr std::size_t kDefaultLayers = 3;
inline constexpr std::size_t kDefaultHeads = 12;

struct SentenceKey {
  std::string doc_id;
  std::size_t sent_idx = 0;

  // "doc_id\0sent_idx" with sent_idx in decimal.
  std::string Encode() const;
  static SentenceKey Decode(std::string_view encoded);
  std::string ToString() const;  // "doc_id#sent_idx", for messages

  auto operator<=>(const SentenceKey&) const = default;
};

// Word-level attention of one sentence, indexed [layer][head][from][to].
// Every (layer, head, from) row is a probability distribution.
class AttentionTensor {
 public:
  AttentionTensor() = default;
  // Zero-filled.
  AttentionTensor(SentenceKey key, std::size_t n_words, std::size_t layers,
                  std::size_t heads);
  AttentionTensor(SentenceKey key, std::size_t n_words, std::size_t layers,
                  std::size_t heads, std::vector<float> values);

  const SentenceKey& key() const { return key_; }
  std::size_t n_words() const { return n_words_; }
  std::size_t layers() const { return layers_; }
  std::size_t heads() const { return heads_; }
  std::size_t channels() const { return layers_ * heads_; }

  float at(std::size_t layer, std::size_t head, std::size_t from,
           std::size_t to) const {
    return values_[Index(layer, head, from, to)];
  }
  float& at(std::size_t layer, std::size_t head, std::size_t from,
            std::size_t to) {
    return values_[Index(layer, head, from, to)];
  }

  std::span<const float> row(std::size_t layer, std::size_t head,
                             std::size_t from) const {
    return {values_.data() + Index(layer, head, from, 0), n_words_};
  }
  std::span<float> row(std::size_t layer, std::size_t head, std::size_t from) {
    return {values_.data() + Index(layer, head, from, 0), n_words_};
  }

  std::span<const float> values() const { return values_; }

  // Largest |sum(row) - 1| over all rows, accumulated in double.
  double MaxRowSumError() const;

  // Throws Error(kInvalidArgument) when a value leaves [0, 1] or a row sum
  // deviates from 1 by more than `tolerance`.
  void CheckInvariants(double tolerance = 1e-4) const;

  // Bitwise equality of key, shape and payload.
  bool operator==(const AttentionTensor& other) const;

 private:
  std::size_t Index(std::size_t layer, std::size_t head, std::size_t from,
                    std::size_t to) const {
    return ((layer * heads_ + head) * n_words_ + from) * n_words_ + to;
  }

  SentenceKey key_;
  std::size_t n_words_ = 0;
  std::size_t layers_ = 0;
  std::size_t heads_ = 0;
  std::vector<float> values_;
};

// Square crop of an attention tensor for one span, indexed
// [channel][row][col] with channel = layer * heads + head.
struct SpanFeature {
  std::size_t channels = 0;
  std::size_t size = 0;  // span length k
  std::vector<float> values;

  float at(std::size_t channel, std::size_t r, std::size_t c) const {
    return values[(channel * size + r) * size + c];
  }
  bool operator==(const SpanFeature&) const = default;
};

// X = A[start..end, start..end] over all channels, without renormalization.
// Throws Error(kInvalidArgument) for spans shorter than two words, spans
// outside [0, n_words), or a sentence index that differs from the tensor's.
SpanFeature ExtractSpanFeature(const AttentionTensor& tensor, const Span& span);

}  // namespace coretag

#endif  // CORETAG_ATTNFEAT_ATTENTION_H_
