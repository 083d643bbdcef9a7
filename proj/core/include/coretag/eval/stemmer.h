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

#ifndef CORETAG_EVAL_STEMMER_H_
#define CORETAG_EVAL_STEMMER_H_

#include <string>
#include <string_view>

namespace coretag {

// Porter (1980) suffix stripping for lowercase ASCII words. Words of length
// <= 2 and words containing non-letters are returned unchanged.
std::string PorterStem(std::string_view word);

// Stems every space-separated word of a normalized phrase.
std::string StemPhrase(std::string_view phrase);

}  // namespace coretag

#endif  // CORETAG_EVAL_STEMMER_H_
