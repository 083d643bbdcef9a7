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

#include "coretag/util/binary_io.h"

#include <zlib.h>

#include <bit>
#include <climits>
#include <iterator>

#include "coretag/util/error.h"

namespace coretag {

void PutU8(std::vector<std::uint8_t>& out, std::uint8_t v) { out.push_back(v); }

void PutU16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void PutU32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) {
    out.push_back(static_cast<std::uint8_t>(v >> shift));
  }
}

void PutU64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int shift = 0; shift < 64; shift += 8) {
    out.push_back(static_cast<std::uint8_t>(v >> shift));
  }
}

void PutF32(std::vector<std::uint8_t>& out, float v) {
  PutU32(out, std::bit_cast<std::uint32_t>(v));
}

void PutBytes(std::vector<std::uint8_t>& out,
              std::span<const std::uint8_t> bytes) {
  out.insert(out.end(), bytes.begin(), bytes.end());
}

void ByteReader::Need(std::size_t n) const {
  if (n > remaining()) {
    throw Error(ErrorCode::kFormat,
                what_ + ": truncated (need " + std::to_string(n) +
                    " bytes at offset " + std::to_string(pos_) + ", have " +
                    std::to_string(remaining()) + ")");
  }
}

std::uint8_t ByteReader::U8() {
  Need(1);
  return bytes_[pos_++];
}

std::uint16_t ByteReader::U16() {
  Need(2);
  std::uint16_t v = static_cast<std::uint16_t>(bytes_[pos_]) |
                    static_cast<std::uint16_t>(bytes_[pos_ + 1] << 8);
  pos_ += 2;
  return v;
}

std::uint32_t ByteReader::U32() {
  Need(4);
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | bytes_[pos_ + i];
  pos_ += 4;
  return v;
}

std::uint64_t ByteReader::U64() {
  Need(8);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | bytes_[pos_ + i];
  pos_ += 8;
  return v;
}

float ByteReader::F32() { return std::bit_cast<float>(U32()); }

std::span<const std::uint8_t> ByteReader::Bytes(std::size_t n) {
  Need(n);
  auto out = bytes_.subspan(pos_, n);
  pos_ += n;
  return out;
}

void DecodeF32Array(std::span<const std::uint8_t> bytes, std::span<float> out) {
  if (bytes.size() != out.size() * 4) {
    throw Error(ErrorCode::kFormat, "float32 array size mismatch");
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint8_t* p = bytes.data() + 4 * i;
    std::uint32_t v = static_cast<std::uint32_t>(p[0]) |
                      (static_cast<std::uint32_t>(p[1]) << 8) |
                      (static_cast<std::uint32_t>(p[2]) << 16) |
                      (static_cast<std::uint32_t>(p[3]) << 24);
    out[i] = std::bit_cast<float>(v);
  }
}

std::uint32_t Crc32(std::span<const std::uint8_t> bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  const Bytef* data = bytes.data();
  std::size_t left = bytes.size();
  // zlib takes a uInt length.
  while (left > 0) {
    uInt chunk = left > UINT_MAX ? UINT_MAX : static_cast<uInt>(left);
    crc = crc32(crc, data, chunk);
    data += chunk;
    left -= chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

FileByteSource::FileByteSource(const std::filesystem::path& path)
    : path_(path), in_(path, std::ios::binary) {
  if (!in_) {
    throw Error(ErrorCode::kIo, "cannot open " + path.string());
  }
  in_.seekg(0, std::ios::end);
  size_ = static_cast<std::uint64_t>(in_.tellg());
}

std::vector<std::uint8_t> FileByteSource::Read(std::uint64_t offset,
                                               std::uint64_t length) const {
  if (offset > size_ || length > size_ - offset) {
    throw Error(ErrorCode::kFormat,
                path_.string() + ": read past end of file (offset " +
                    std::to_string(offset) + ", length " +
                    std::to_string(length) + ")");
  }
  std::vector<std::uint8_t> out(length);
  std::lock_guard<std::mutex> lock(mu_);
  in_.clear();
  in_.seekg(static_cast<std::streamoff>(offset));
  in_.read(reinterpret_cast<char*>(out.data()),
           static_cast<std::streamsize>(length));
  if (!in_) {
    throw Error(ErrorCode::kIo, path_.string() + ": read failed");
  }
  return out;
}

std::vector<std::uint8_t> MemoryByteSource::Read(std::uint64_t offset,
                                                 std::uint64_t length) const {
  if (offset > bytes_.size() || length > bytes_.size() - offset) {
    throw Error(ErrorCode::kFormat, "read past end of buffer");
  }
  auto first = bytes_.begin() + static_cast<std::ptrdiff_t>(offset);
  return {first, first + static_cast<std::ptrdiff_t>(length)};
}

std::vector<std::uint8_t> ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteFileBytes(const std::filesystem::path& path,
                    std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

}  // namespace coretag
