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

#ifndef CORETAG_UTIL_HASH_H_
#define CORETAG_UTIL_HASH_H_

#include <cstdint>
#include <string_view>

namespace coretag {

// Platform-independent hashes. Everything that derives seeds or synthetic
// values from strings goes through these so outputs match across builds.
std::uint64_t Fnv1a64(std::string_view bytes,
                      std::uint64_t basis = 0xcbf29ce484222325ULL);

std::uint64_t SplitMix64(std::uint64_t x);

inline std::uint64_t HashCombine(std::uint64_t a, std::uint64_t b) {
  return SplitMix64(a ^ (SplitMix64(b) + 0x9e3779b97f4a7c15ULL + (a << 6) +
                         (a >> 2)));
}

// Per-document seed: hash(global_seed, doc_id).
std::uint64_t DeriveSeed(std::uint64_t global_seed, std::string_view key);

// Maps a 64-bit hash to [0, 1) using the top 53 bits.
inline double HashToUnit(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace coretag

#endif  // CORETAG_UTIL_HASH_H_
