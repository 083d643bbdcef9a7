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

#include "coretag/classifier/checkpoint.h"

#include <algorithm>
#include <cmath>
#include <cstring>

#include <nlohmann/json.hpp>

#include "coretag/util/binary_io.h"
#include "coretag/util/error.h"

namespace coretag {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json ArchitectureJson(const Architecture& a) {
  return {{"channels", a.channels},       {"conv1_filters", a.conv1_filters},
          {"conv2_filters", a.conv2_filters}, {"kernel", a.kernel},
          {"k_max", a.k_max}};
}

std::string MetadataJson(const ModelCheckpoint& c) {
  ordered_json shapes = ordered_json::object();
  const auto blocks = c.params.blocks();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    shapes[std::string(kParamBlockNames[b])] = blocks[b].size();
  }
  ordered_json j = {
      {"architecture", ArchitectureJson(c.params.arch)},
      {"train_config", ordered_json::parse(c.config.ToJson())},
      {"best_epoch", c.best_epoch},
      {"validation_f1", c.validation_f1},
      {"provider", c.provider},
      {"tensors", shapes},
  };
  return j.dump();
}

}  // namespace

std::vector<std::uint8_t> EncodeCheckpoint(const ModelCheckpoint& checkpoint) {
  CheckArchitecture(checkpoint.params.arch);
  const ModelParams reference(checkpoint.params.arch);
  const auto blocks = checkpoint.params.blocks();
  const auto expected = reference.blocks();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].size() != expected[b].size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "parameter block " + std::string(kParamBlockNames[b]) +
                      " has the wrong size");
    }
    for (float v : blocks[b]) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kNumeric, "non-finite value in " +
                                             std::string(kParamBlockNames[b]));
      }
    }
  }

  const std::string meta = MetadataJson(checkpoint);
  std::vector<std::uint8_t> out;
  out.insert(out.end(), kCheckpointMagic, kCheckpointMagic + 4);
  PutU32(out, kCheckpointVersion);
  PutU32(out, static_cast<std::uint32_t>(meta.size()));
  const std::span<const std::uint8_t> meta_bytes(
      reinterpret_cast<const std::uint8_t*>(meta.data()), meta.size());
  PutU32(out, Crc32(meta_bytes));
  PutBytes(out, meta_bytes);
  for (auto block : blocks) {
    std::vector<std::uint8_t> tensor;
    tensor.reserve(4 + block.size() * 4);
    PutU32(tensor, static_cast<std::uint32_t>(block.size()));
    for (float v : block) PutF32(tensor, v);
    PutU32(out, static_cast<std::uint32_t>(block.size()));
    PutU32(out, Crc32(tensor));
    PutBytes(out, std::span<const std::uint8_t>(tensor).subspan(4));
  }
  return out;
}

ModelCheckpoint DecodeCheckpoint(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes, "checkpoint");
  const auto magic = in.Bytes(4);
  if (std::memcmp(magic.data(), kCheckpointMagic, 4) != 0) {
    throw Error(ErrorCode::kFormat, "not a checkpoint file (bad magic)");
  }
  const std::uint32_t version = in.U32();
  if (version != kCheckpointVersion) {
    throw Error(ErrorCode::kVersion,
                "unsupported checkpoint version " + std::to_string(version));
  }
  const std::uint32_t meta_len = in.U32();
  const std::uint32_t meta_crc = in.U32();
  const auto meta_bytes = in.Bytes(meta_len);
  if (Crc32(meta_bytes) != meta_crc) {
    throw Error(ErrorCode::kChecksum, "checkpoint metadata checksum mismatch");
  }

  ModelCheckpoint c;
  try {
    const auto meta = nlohmann::json::parse(meta_bytes.begin(), meta_bytes.end());
    const auto& a = meta.at("architecture");
    Architecture arch;
    arch.channels = a.at("channels").get<std::size_t>();
    arch.conv1_filters = a.at("conv1_filters").get<std::size_t>();
    arch.conv2_filters = a.at("conv2_filters").get<std::size_t>();
    arch.kernel = a.at("kernel").get<std::size_t>();
    arch.k_max = a.at("k_max").get<std::size_t>();
    CheckArchitecture(arch);
    c.params = ModelParams(arch);
    c.config = TrainConfig::FromJson(meta.at("train_config").dump());
    c.best_epoch = meta.at("best_epoch").get<std::size_t>();
    c.validation_f1 = meta.at("validation_f1").get<double>();
    c.provider = meta.at("provider").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("bad checkpoint metadata: ") + e.what());
  } catch (const Error& e) {
    throw Error(ErrorCode::kFormat, std::string("bad checkpoint metadata: ") + e.what());
  }

  auto blocks = c.params.blocks();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const std::string name(kParamBlockNames[b]);
    const auto count_bytes = in.Bytes(4);
    ByteReader count_reader(count_bytes, "checkpoint");
    const std::uint32_t count = count_reader.U32();
    const std::uint32_t crc = in.U32();
    if (count != blocks[b].size()) {
      // The count may itself be corrupted; check its CRC over what is there.
      const std::size_t available =
          std::min<std::size_t>(in.remaining(), static_cast<std::size_t>(count) * 4);
      std::vector<std::uint8_t> covered(count_bytes.begin(), count_bytes.end());
      const auto rest = bytes.subspan(in.position(), available);
      covered.insert(covered.end(), rest.begin(), rest.end());
      if (Crc32(covered) != crc) {
        throw Error(ErrorCode::kChecksum, "checksum mismatch in tensor " + name);
      }
      throw Error(ErrorCode::kFormat,
                  "tensor " + name + " has " + std::to_string(count) +
                      " values, architecture expects " +
                      std::to_string(blocks[b].size()));
    }
    const auto data = in.Bytes(static_cast<std::size_t>(count) * 4);
    std::vector<std::uint8_t> covered(count_bytes.begin(), count_bytes.end());
    covered.insert(covered.end(), data.begin(), data.end());
    if (Crc32(covered) != crc) {
      throw Error(ErrorCode::kChecksum, "checksum mismatch in tensor " + name);
    }
    DecodeF32Array(data, blocks[b]);
  }
  if (in.remaining() != 0) {
    throw Error(ErrorCode::kFormat, "trailing bytes after checkpoint tensors");
  }
  return c;
}

void SaveCheckpoint(const std::filesystem::path& path,
                    const ModelCheckpoint& checkpoint) {
  WriteFileBytes(path, EncodeCheckpoint(checkpoint));
}

ModelCheckpoint LoadCheckpoint(const std::filesystem::path& path) {
  return DecodeCheckpoint(ReadFileBytes(path));
}

}  // namespace coretag
