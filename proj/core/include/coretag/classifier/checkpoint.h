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

#ifndef CORETAG_CLASSIFIER_CHECKPOINT_H_
#define CORETAG_CLASSIFIER_CHECKPOINT_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "coretag/classifier/model.h"
#include "coretag/classifier/trainer.h"

namespace coretag {

inline constexpr char kCheckpointMagic[4] = {'U', 'C', 'P', 'M'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct ModelCheckpoint {
  ModelParams params;
  TrainConfig config;
  std::size_t best_epoch = 0;
  double validation_f1 = 0.0;
  std::string provider;  // AttentionProvider::Describe() of the training run

  bool operator==(const ModelCheckpoint&) const = default;
};

// Layout (little-endian):
//   "UCPM" | version u32 | meta_len u32 | meta_crc u32 | meta JSON
//   per tensor in kParamBlockNames order:
//     count u32 | crc32(count bytes + data) u32 | count x float32
std::vector<std::uint8_t> EncodeCheckpoint(const ModelCheckpoint& checkpoint);

// Errors: kFormat for bad magic, truncation, or tensor shapes that disagree
// with the recorded architecture; kVersion for an unknown version; kChecksum
// when any CRC fails.
ModelCheckpoint DecodeCheckpoint(std::span<const std::uint8_t> bytes);

void SaveCheckpoint(const std::filesystem::path& path,
                    const ModelCheckpoint& checkpoint);
ModelCheckpoint LoadCheckpoint(const std::filesystem::path& path);

}  // namespace coretag

#endif  // CORETAG_CLASSIFIER_CHECKPOINT_H_
