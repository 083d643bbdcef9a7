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

#ifndef CORETAG_UTIL_BINARY_IO_H_
#define CORETAG_UTIL_BINARY_IO_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <span>
#include <string>
#include <vector>

namespace coretag {

// Little-endian encoders appending to a byte buffer.
void PutU8(std::vector<std::uint8_t>& out, std::uint8_t v);
void PutU16(std::vector<std::uint8_t>& out, std::uint16_t v);
void PutU32(std::vector<std::uint8_t>& out, std::uint32_t v);
void PutU64(std::vector<std::uint8_t>& out, std::uint64_t v);
void PutF32(std::vector<std::uint8_t>& out, float v);
void PutBytes(std::vector<std::uint8_t>& out, std::span<const std::uint8_t> bytes);

// Bounds-checked little-endian decoder over a byte span. Reading past the
// end throws Error(kFormat) with `what_` as context.
class ByteReader {
 public:
  ByteReader(std::span<const std::uint8_t> bytes, std::string what)
      : bytes_(bytes), what_(std::move(what)) {}

  std::uint8_t U8();
  std::uint16_t U16();
  std::uint32_t U32();
  std::uint64_t U64();
  float F32();
  std::span<const std::uint8_t> Bytes(std::size_t n);

  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void Need(std::size_t n) const;

  std::span<const std::uint8_t> bytes_;
  std::string what_;
  std::size_t pos_ = 0;
};

// Decodes `count` float32 LE values.
void DecodeF32Array(std::span<const std::uint8_t> bytes, std::span<float> out);

std::uint32_t Crc32(std::span<const std::uint8_t> bytes);

// Positional read access to an immutable byte store.
class ByteSource {
 public:
  virtual ~ByteSource() = default;
  virtual std::uint64_t size() const = 0;
  // Reads exactly `length` bytes at `offset`; throws Error(kFormat) when the
  // range extends past the end.
  virtual std::vector<std::uint8_t> Read(std::uint64_t offset,
                                         std::uint64_t length) const = 0;
};

// File-backed source. Reads are serialized so one instance can be shared
// between threads.
class FileByteSource : public ByteSource {
 public:
  explicit FileByteSource(const std::filesystem::path& path);

  std::uint64_t size() const override { return size_; }
  std::vector<std::uint8_t> Read(std::uint64_t offset,
                                 std::uint64_t length) const override;

 private:
  std::filesystem::path path_;
  mutable std::ifstream in_;
  mutable std::mutex mu_;
  std::uint64_t size_ = 0;
};

class MemoryByteSource : public ByteSource {
 public:
  explicit MemoryByteSource(std::vector<std::uint8_t> bytes)
      : bytes_(std::move(bytes)) {}

  std::uint64_t size() const override { return bytes_.size(); }
  std::vector<std::uint8_t> Read(std::uint64_t offset,
                                 std::uint64_t length) const override;

 private:
  std::vector<std::uint8_t> bytes_;
};

std::vector<std::uint8_t> ReadFileBytes(const std::filesystem::path& path);
void WriteFileBytes(const std::filesystem::path& path,
                    std::span<const std::uint8_t> bytes);

}  // namespace coretag

#endif  // CORETAG_UTIL_BINARY_IO_H_
