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

#ifndef CORETAG_LABELGEN_LABELS_H_
#define CORETAG_LABELGEN_LABELS_H_

#include <compare>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace coretag {

struct Document;

// Phrases are multi-word: every span covers at least two words.
inline constexpr std::size_t kMinSpanLength = 2;

// Word interval [start, end) inside one sentence.
struct Span {
  std::size_t sent_idx = 0;
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start; }
  auto operator<=>(const Span&) const = default;
};

inline bool Overlaps(const Span& a, const Span& b) {
  return a.sent_idx == b.sent_idx && a.start < b.end && b.start < a.end;
}

// Throws Error(kInvalidArgument) unless the span lies inside a sentence of
// `doc` and kMinSpanLength <= length <= k_max.
void CheckSpan(const Document& doc, const Span& span, std::size_t k_max);

enum class Polarity { kPositive, kNegative };
enum class LabelSource { kCore, kGazetteer, kSampled };

std::string_view PolarityName(Polarity p);   // "pos" | "neg"
std::string_view SourceName(LabelSource s);  // "core" | "gazetteer" | "sampled"

struct SpanLabel {
  std::string doc_id;
  Span span;
  Polarity polarity = Polarity::kPositive;
  LabelSource source = LabelSource::kCore;

  bool operator==(const SpanLabel&) const = default;
};

// A label set is a vector sorted by (doc_id, span) with unique keys.
using LabelSet = std::vector<SpanLabel>;

// Sorts and removes exact duplicates. When one key carries labels from more
// than one source, the positive core label wins over gazetteer, which wins
// over sampled. Conflicting polarities for one key raise
// Error(kInvalidArgument).
void Canonicalize(LabelSet& labels);

// Union of two label sets, canonicalized.
LabelSet MergeLabels(const LabelSet& a, const LabelSet& b);

std::size_t CountPolarity(const LabelSet& labels, Polarity polarity);

// JSON Lines: {"doc_id", "sent_idx", "start", "end", "polarity", "source"}.
void WriteLabels(const std::filesystem::path& path, const LabelSet& labels);
LabelSet ReadLabels(const std::filesystem::path& path);

}  // namespace coretag

#endif  // CORETAG_LABELGEN_LABELS_H_
