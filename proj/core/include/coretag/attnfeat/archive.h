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

#ifndef CORETAG_ATTNFEAT_ARCHIVE_H_
#define CORETAG_ATTNFEAT_ARCHIVE_H_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "coretag/attnfeat/attention.h"
#include "coretag/util/binary_io.h"

namespace coretag {

// Attention archive ("UCAT"), all integers little-endian:
//
//   magic "UCAT" | version u32 | tensor count u64
//   index, sorted by key bytes, one record per tensor:
//     key length u16 | key bytes ("doc_id\0sent_idx") | offset u64 | length u64
//   payload records, at the offsets named by the index:
//     N u16 | L u8 | H u8 | CRC32 u32 | L*H*N*N float32
//
// `offset` is the absolute file position of a record's N field and `length`
// the record size including its 8-byte prefix. The CRC32 covers the float32
// bytes.
inline constexpr char kArchiveMagic[4] = {'U', 'C', 'A', 'T'};
inline constexpr std::uint32_t kArchiveVersion = 1;

// Streams tensors into an archive. Payloads are spilled to "<path>.partial"
// until Finish() writes the header and the sorted index in front of them.
class ArchiveWriter {
 public:
  explicit ArchiveWriter(std::filesystem::path path);
  ~ArchiveWriter();

  ArchiveWriter(const ArchiveWriter&) = delete;
  ArchiveWriter& operator=(const ArchiveWriter&) = delete;

  // Validates row sums and rejects duplicate keys.
  void Add(const AttentionTensor& tensor);
  void Finish();

  std::size_t size() const { return entries_.size(); }

 private:
  struct Entry {
    std::string key;
    std::uint64_t spill_offset;
    std::uint64_t length;
  };

  std::filesystem::path path_;
  std::filesystem::path spill_path_;
  std::ofstream spill_;
  std::uint64_t spill_size_ = 0;
  std::vector<Entry> entries_;
  std::unordered_set<std::string> keys_;
  bool finished_ = false;
};

// Whole-archive helpers.
std::vector<std::uint8_t> EncodeArchive(std::span<const AttentionTensor> tensors);
void WriteArchive(const std::filesystem::path& path,
                  std::span<const AttentionTensor> tensors);

struct PayloadShape {
  std::size_t n_words = 0;
  std::size_t layers = 0;
  std::size_t heads = 0;
};

// Random-access reader. Opening reads the header and index only; each Read()
// binary-searches the in-memory index and fetches one payload record. Safe
// for concurrent Read() calls.
class ArchiveReader {
 public:
  explicit ArchiveReader(std::shared_ptr<const ByteSource> source);
  static ArchiveReader Open(const std::filesystem::path& path);

  std::size_t size() const { return index_.size(); }
  bool Contains(const SentenceKey& key) const;
  std::vector<SentenceKey> Keys() const;

  // Errors: kNotFound for an absent key, kChecksum on CRC mismatch, kFormat
  // for malformed or truncated records.
  AttentionTensor Read(const SentenceKey& key) const;

  // Shape of the first payload in index order, if any.
  std::optional<PayloadShape> FirstShape() const;

 private:
  struct IndexEntry {
    std::string key;
    std::uint64_t offset;
    std::uint64_t length;
  };

  const IndexEntry* Find(const std::string& encoded) const;
  PayloadShape ReadShape(const IndexEntry& entry) const;

  std::shared_ptr<const ByteSource> source_;
  std::vector<IndexEntry> index_;
};

}  // namespace coretag

#endif  // CORETAG_ATTNFEAT_ARCHIVE_H_
