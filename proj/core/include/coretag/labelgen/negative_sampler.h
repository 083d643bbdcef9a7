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

#ifndef CORETAG_LABELGEN_NEGATIVE_SAMPLER_H_
#define CORETAG_LABELGEN_NEGATIVE_SAMPLER_H_

#include <cstddef>
#include <cstdint>

#include "coretag/labelgen/labels.h"

namespace coretag {

struct Document;

// Every span of length 2..k_max inside a sentence of `doc`, ordered by
// (sent_idx, start, end).
std::vector<Span> AllCandidateSpans(const Document& doc, std::size_t k_max);

// Draws min(#distinct positive spans, #remaining spans) negatives uniformly
// without replacement from the candidate spans of `doc` that do not coincide
// with a positive span. Only labels with doc_id == doc.id are considered
// positives. Deterministic in `seed`.
LabelSet SampleNegatives(const Document& doc, const LabelSet& positives,
                         std::size_t k_max, std::uint64_t seed);

}  // namespace coretag

#endif  // CORETAG_LABELGEN_NEGATIVE_SAMPLER_H_
