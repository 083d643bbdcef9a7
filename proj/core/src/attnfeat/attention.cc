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

#include "coretag/attnfeat/attention.h"

#include <cmath>
#include <cstring>
#include <limits>

#include "coretag/util/error.h"

namespace coretag {

std::string SentenceKey::Encode() const {
  std::string out = doc_id;
  out.push_back('\0');
  out += std::to_string(sent_idx);
  return out;
}

SentenceKey SentenceKey::Decode(std::string_view encoded) {
  auto nul = encoded.find('\0');
  if (nul == std::string_view::npos || nul + 1 == encoded.size()) {
    throw Error(ErrorCode::kFormat, "malformed sentence key");
  }
  SentenceKey key;
  key.doc_id = std::string(encoded.substr(0, nul));
  std::size_t idx = 0;
  for (char c : encoded.substr(nul + 1)) {
    if (c < '0' || c > '9') {
      throw Error(ErrorCode::kFormat, "malformed sentence index in key");
    }
    idx = idx * 10 + static_cast<std::size_t>(c - '0');
  }
  key.sent_idx = idx;
  return key;
}

std::string SentenceKey::ToString() const {
  return doc_id + "#" + std::to_string(sent_idx);
}

AttentionTensor::AttentionTensor(SentenceKey key, std::size_t n_words,
                                 std::size_t layers, std::size_t heads)
    : AttentionTensor(std::move(key), n_words, layers, heads,
                      std::vector<float>(layers * heads * n_words * n_words)) {}

AttentionTensor::AttentionTensor(SentenceKey key, std::size_t n_words,
                                 std::size_t layers, std::size_t heads,
                                 std::vector<float> values)
    : key_(std::move(key)),
      n_words_(n_words),
      layers_(layers),
      heads_(heads),
      values_(std::move(values)) {
  if (n_words > std::numeric_limits<std::uint16_t>::max() || layers > 255 ||
      heads > 255) {
    throw Error(ErrorCode::kInvalidArgument, "attention shape too large");
  }
  if (values_.size() != layers * heads * n_words * n_words) {
    throw Error(ErrorCode::kInvalidArgument,
                "attention payload size does not match L*H*N*N");
  }
}

double AttentionTensor::MaxRowSumError() const {
  double worst = 0.0;
  for (std::size_t l = 0; l < layers_; ++l) {
    for (std::size_t h = 0; h < heads_; ++h) {
      for (std::size_t i = 0; i < n_words_; ++i) {
        double sum = 0.0;
        for (float v : row(l, h, i)) sum += v;
        worst = std::max(worst, std::abs(sum - 1.0));
      }
    }
  }
  return worst;
}

void AttentionTensor::CheckInvariants(double tolerance) const {
  for (float v : values_) {
    if (!(v >= 0.0f && v <= 1.0f)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "attention value outside [0,1] in " + key_.ToString());
    }
  }
  if (n_words_ > 0 && MaxRowSumError() > tolerance) {
    throw Error(ErrorCode::kInvalidArgument,
                "attention rows do not sum to 1 in " + key_.ToString());
  }
}

bool AttentionTensor::operator==(const AttentionTensor& other) const {
  return key_ == other.key_ && n_words_ == other.n_words_ &&
         layers_ == other.layers_ && heads_ == other.heads_ &&
         values_.size() == other.values_.size() &&
         std::memcmp(values_.data(), other.values_.data(),
                     values_.size() * sizeof(float)) == 0;
}

SpanFeature ExtractSpanFeature(const AttentionTensor& tensor, const Span& span) {
  if (span.sent_idx != tensor.key().sent_idx) {
    throw Error(ErrorCode::kInvalidArgument,
                "span sentence does not match tensor " + tensor.key().ToString());
  }
  if (span.end <= span.start || span.length() < kMinSpanLength) {
    throw Error(ErrorCode::kInvalidArgument,
                "span feature needs at least two words");
  }
  if (span.end > tensor.n_words()) {
    throw Error(ErrorCode::kInvalidArgument,
                "span [" + std::to_string(span.start) + "," +
                    std::to_string(span.end) + ") out of bounds for " +
                    std::to_string(tensor.n_words()) + "-word tensor " +
                    tensor.key().ToString());
  }
  const std::size_t k = span.length();
  SpanFeature feature;
  feature.channels = tensor.channels();
  feature.size = k;
  feature.values.resize(feature.channels * k * k);
  float* out = feature.values.data();
  for (std::size_t l = 0; l < tensor.layers(); ++l) {
    for (std::size_t h = 0; h < tensor.heads(); ++h) {
      for (std::size_t r = 0; r < k; ++r) {
        auto src = tensor.row(l, h, span.start + r).subspan(span.start, k);
        std::memcpy(out, src.data(), k * sizeof(float));
        out += k;
      }
    }
  }
  return feature;
}

}  // namespace coretag
