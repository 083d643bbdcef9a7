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

#include "coretag/labelgen/negative_sampler.h"

#include <algorithm>
#include <set>

#include "coretag/corpus/corpus.h"
#include "coretag/util/rng.h"

namespace coretag {

std::vector<Span> AllCandidateSpans(const Document& doc, std::size_t k_max) {
  std::vector<Span> spans;
  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    const std::size_t n = doc.sentences[s].size();
    for (std::size_t start = 0; start < n; ++start) {
      for (std::size_t len = kMinSpanLength; len <= k_max && start + len <= n;
           ++len) {
        spans.push_back(Span{s, start, start + len});
      }
    }
  }
  return spans;
}

LabelSet SampleNegatives(const Document& doc, const LabelSet& positives,
                         std::size_t k_max, std::uint64_t seed) {
  std::set<Span> positive_spans;
  for (const auto& label : positives) {
    if (label.doc_id == doc.id && label.polarity == Polarity::kPositive) {
      positive_spans.insert(label.span);
    }
  }
  LabelSet negatives;
  if (positive_spans.empty()) return negatives;

  std::vector<Span> pool;
  for (const Span& span : AllCandidateSpans(doc, k_max)) {
    if (!positive_spans.count(span)) pool.push_back(span);
  }
  const std::size_t take = std::min(positive_spans.size(), pool.size());
  Rng rng(seed);
  // Partial Fisher-Yates: the first `take` slots are a uniform sample.
  for (std::size_t i = 0; i < take; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.Below(pool.size() - i));
    std::swap(pool[i], pool[j]);
    negatives.push_back(SpanLabel{doc.id, pool[i], Polarity::kNegative,
                                  LabelSource::kSampled});
  }
  Canonicalize(negatives);
  return negatives;
}

}  // namespace coretag
