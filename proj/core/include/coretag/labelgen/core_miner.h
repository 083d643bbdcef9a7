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

#ifndef CORETAG_LABELGEN_CORE_MINER_H_
#define CORETAG_LABELGEN_CORE_MINER_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "coretag/labelgen/labels.h"

namespace coretag {

struct Document;
class StopwordList;

struct MiningOptions {
  std::size_t min_freq = 2;
  std::size_t k_max = 6;
  // Boundary-stopword list; nullptr selects StopwordList::Default().
  const StopwordList* stopwords = nullptr;
};

// A maximal repeated word pattern of one document.
struct CorePattern {
  std::vector<std::string> tokens;
  // Start positions in the document word sequence, ascending. Occurrences
  // may overlap and may cross sentence boundaries.
  std::vector<std::size_t> positions;

  std::size_t frequency() const { return positions.size(); }
};

// True when the pattern may become a phrase label: neither end is a
// stopword, and no token is punctuation or purely numeric.
bool PassesPhraseFilter(std::span<const std::string> tokens,
                        const StopwordList& stopwords);

// Mines maximal repeated patterns from a word sequence.
//
// An n-gram (2 <= n <= k_max) is kept when it occurs at least min_freq times
// (overlapping occurrences count), passes PassesPhraseFilter, and is not a
// contiguous sub-sequence of another kept n-gram. Counting runs one length at
// a time and stops at the first length with no frequent n-gram; an n-gram is
// only counted where both of its (n-1)-gram children are frequent.
//
// Result is sorted by token sequence.
std::vector<CorePattern> MineCorePatterns(std::span<const std::string> words,
                                          const MiningOptions& options);

// Positive core labels: every occurrence of a mined pattern that lies fully
// inside one sentence of `doc`.
LabelSet MineCorePhrases(const Document& doc, const MiningOptions& options);

}  // namespace coretag

#endif  // CORETAG_LABELGEN_CORE_MINER_H_
