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

#include "coretag/attnfeat/archive.h"

#include <algorithm>
#include <cstring>
#include <limits>

#include "coretag/util/error.h"

namespace coretag {
namespace {

constexpr std::size_t kHeaderSize = 16;
constexpr std::size_t kRecordPrefix = 8;

std::uint64_t RecordLength(std::size_t n, std::size_t layers, std::size_t heads) {
  return kRecordPrefix + 4ULL * layers * heads * n * n;
}

std::vector<std::uint8_t> EncodeRecord(const AttentionTensor& t) {
  std::vector<std::uint8_t> values;
  values.reserve(t.values().size() * 4);
  for (float v : t.values()) PutF32(values, v);
  std::vector<std::uint8_t> record;
  record.reserve(kRecordPrefix + values.size());
  PutU16(record, static_cast<std::uint16_t>(t.n_words()));
  PutU8(record, static_cast<std::uint8_t>(t.layers()));
  PutU8(record, static_cast<std::uint8_t>(t.heads()));
  PutU32(record, Crc32(values));
  PutBytes(record, values);
  return record;
}

// Shared by the writer and EncodeArchive: entries carry payload lengths in
// payload order; returns header+index with offsets assuming payloads follow
// the index in that same order.
struct PendingEntry {
  std::string key;
  std::uint64_t length;
};

std::vector<std::uint8_t> BuildHeaderAndIndex(
    const std::vector<PendingEntry>& entries) {
  std::uint64_t index_size = 0;
  for (const auto& e : entries) index_size += 2 + e.key.size() + 16;
  std::vector<std::uint64_t> offsets(entries.size());
  std::uint64_t next = kHeaderSize + index_size;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    offsets[i] = next;
    next += entries[i].length;
  }
  std::vector<std::size_t> order(entries.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return entries[a].key < entries[b].key;
  });
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + index_size);
  out.insert(out.end(), std::begin(kArchiveMagic), std::end(kArchiveMagic));
  PutU32(out, kArchiveVersion);
  PutU64(out, entries.size());
  for (std::size_t i : order) {
    const auto& e = entries[i];
    PutU16(out, static_cast<std::uint16_t>(e.key.size()));
    out.insert(out.end(), e.key.begin(), e.key.end());
    PutU64(out, offsets[i]);
    PutU64(out, e.length);
  }
  return out;
}

std::string CheckedKey(const AttentionTensor& t) {
  std::string key = t.key().Encode();
  if (key.size() > std::numeric_limits<std::uint16_t>::max()) {
    throw Error(ErrorCode::kInvalidArgument, "sentence key too long");
  }
  return key;
}

}  // namespace

ArchiveWriter::ArchiveWriter(std::filesystem::path path)
    : path_(std::move(path)),
      spill_path_(path_.string() + ".partial"),
      spill_(spill_path_, std::ios::binary | std::ios::trunc) {
  if (!spill_) throw Error(ErrorCode::kIo, "cannot write " + spill_path_.string());
}

ArchiveWriter::~ArchiveWriter() {
  if (!finished_) {
    spill_.close();
    std::error_code ec;
    std::filesystem::remove(spill_path_, ec);
  }
}

void ArchiveWriter::Add(const AttentionTensor& tensor) {
  if (finished_) throw Error(ErrorCode::kFailedPrecondition, "archive finished");
  tensor.CheckInvariants();
  std::string key = CheckedKey(tensor);
  if (!keys_.insert(key).second) {
    throw Error(ErrorCode::kInvalidArgument,
                "duplicate archive key " + tensor.key().ToString());
  }
  auto record = EncodeRecord(tensor);
  spill_.write(reinterpret_cast<const char*>(record.data()),
               static_cast<std::streamsize>(record.size()));
  if (!spill_) throw Error(ErrorCode::kIo, "write failed: " + spill_path_.string());
  entries_.push_back(Entry{std::move(key), spill_size_, record.size()});
  spill_size_ += record.size();
}

void ArchiveWriter::Finish() {
  if (finished_) return;
  spill_.close();
  std::vector<PendingEntry> pending;
  pending.reserve(entries_.size());
  for (const auto& e : entries_) pending.push_back({e.key, e.length});
  const auto head = BuildHeaderAndIndex(pending);
  {
    std::ofstream out(path_, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + path_.string());
    out.write(reinterpret_cast<const char*>(head.data()),
              static_cast<std::streamsize>(head.size()));
    std::ifstream in(spill_path_, std::ios::binary);
    out << in.rdbuf();
    if (!out) throw Error(ErrorCode::kIo, "write failed: " + path_.string());
  }
  std::filesystem::remove(spill_path_);
  finished_ = true;
}

std::vector<std::uint8_t> EncodeArchive(std::span<const AttentionTensor> tensors) {
  std::vector<PendingEntry> pending;
  std::vector<std::vector<std::uint8_t>> records;
  for (const auto& t : tensors) {
    t.CheckInvariants();
    records.push_back(EncodeRecord(t));
    pending.push_back({CheckedKey(t), records.back().size()});
  }
  std::vector<std::string> keys;
  for (const auto& p : pending) keys.push_back(p.key);
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate archive key");
  }
  auto out = BuildHeaderAndIndex(pending);
  for (const auto& r : records) PutBytes(out, r);
  return out;
}

void WriteArchive(const std::filesystem::path& path,
                  std::span<const AttentionTensor> tensors) {
  WriteFileBytes(path, EncodeArchive(tensors));
}

ArchiveReader::ArchiveReader(std::shared_ptr<const ByteSource> source)
    : source_(std::move(source)) {
  const std::uint64_t file_size = source_->size();
  if (file_size < kHeaderSize) {
    throw Error(ErrorCode::kFormat, "attention archive truncated: no header");
  }
  auto header = source_->Read(0, kHeaderSize);
  if (std::memcmp(header.data(), kArchiveMagic, 4) != 0) {
    throw Error(ErrorCode::kFormat, "not an attention archive (bad magic)");
  }
  ByteReader hr(header, "archive header");
  hr.Bytes(4);
  const std::uint32_t version = hr.U32();
  if (version != kArchiveVersion) {
    throw Error(ErrorCode::kVersion,
                "unsupported attention archive version " + std::to_string(version));
  }
  const std::uint64_t count = hr.U64();
  // Every index record takes at least 18 bytes plus a one-byte key.
  if (count > (file_size - kHeaderSize) / 19) {
    throw Error(ErrorCode::kFormat, "attention archive truncated: index");
  }

  // Index records are variable-length; pull the index in chunks.
  std::vector<std::uint8_t> buffer;
  std::size_t pos = 0;
  std::uint64_t next_read = kHeaderSize;
  auto ensure = [&](std::size_t n) {
    while (buffer.size() - pos < n) {
      if (next_read >= file_size) {
        throw Error(ErrorCode::kFormat, "attention archive truncated: index");
      }
      const std::uint64_t chunk = std::min<std::uint64_t>(64 * 1024, file_size - next_read);
      auto more = source_->Read(next_read, chunk);
      buffer.erase(buffer.begin(), buffer.begin() + static_cast<std::ptrdiff_t>(pos));
      pos = 0;
      buffer.insert(buffer.end(), more.begin(), more.end());
      next_read += chunk;
    }
  };
  index_.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    ensure(2);
    ByteReader lr(std::span<const std::uint8_t>(buffer).subspan(pos, 2), "archive index");
    const std::uint16_t key_len = lr.U16();
    pos += 2;
    ensure(key_len + 16u);
    ByteReader er(std::span<const std::uint8_t>(buffer).subspan(pos, key_len + 16u), "archive index");
    auto key_bytes = er.Bytes(key_len);
    IndexEntry entry;
    entry.key.assign(key_bytes.begin(), key_bytes.end());
    entry.offset = er.U64();
    entry.length = er.U64();
    pos += key_len + 16u;
    if (entry.offset > file_size || entry.length > file_size - entry.offset ||
        entry.length < kRecordPrefix) {
      throw Error(ErrorCode::kFormat,
                  "attention archive truncated: payload for key '" +
                      SentenceKey::Decode(entry.key).ToString() +
                      "' extends past end of file");
    }
    index_.push_back(std::move(entry));
  }
  if (!std::is_sorted(index_.begin(), index_.end(),
                      [](const IndexEntry& a, const IndexEntry& b) {
                        return a.key < b.key;
                      })) {
    std::sort(index_.begin(), index_.end(),
              [](const IndexEntry& a, const IndexEntry& b) { return a.key < b.key; });
  }
}

ArchiveReader ArchiveReader::Open(const std::filesystem::path& path) {
  return ArchiveReader(std::make_shared<FileByteSource>(path));
}

const ArchiveReader::IndexEntry* ArchiveReader::Find(
    const std::string& encoded) const {
  auto it = std::lower_bound(
      index_.begin(), index_.end(), encoded,
      [](const IndexEntry& e, const std::string& k) { return e.key < k; });
  if (it == index_.end() || it->key != encoded) return nullptr;
  return &*it;
}

bool ArchiveReader::Contains(const SentenceKey& key) const {
  return Find(key.Encode()) != nullptr;
}

std::vector<SentenceKey> ArchiveReader::Keys() const {
  std::vector<SentenceKey> keys;
  keys.reserve(index_.size());
  for (const auto& e : index_) keys.push_back(SentenceKey::Decode(e.key));
  return keys;
}

PayloadShape ArchiveReader::ReadShape(const IndexEntry& entry) const {
  auto prefix = source_->Read(entry.offset, 4);
  ByteReader r(prefix, "archive record");
  PayloadShape shape;
  shape.n_words = r.U16();
  shape.layers = r.U8();
  shape.heads = r.U8();
  return shape;
}

std::optional<PayloadShape> ArchiveReader::FirstShape() const {
  if (index_.empty()) return std::nullopt;
  return ReadShape(index_.front());
}

AttentionTensor ArchiveReader::Read(const SentenceKey& key) const {
  const IndexEntry* entry = Find(key.Encode());
  if (!entry) {
    throw Error(ErrorCode::kNotFound,
                "attention archive has no entry for sentence " + key.ToString());
  }
  auto record = source_->Read(entry->offset, entry->length);
  ByteReader r(record, "archive record " + key.ToString());
  const std::size_t n = r.U16();
  const std::size_t layers = r.U8();
  const std::size_t heads = r.U8();
  const std::uint32_t crc = r.U32();
  if (RecordLength(n, layers, heads) != entry->length) {
    throw Error(ErrorCode::kFormat, "archive record " + key.ToString() +
                                        ": shape does not match indexed length");
  }
  auto payload = r.Bytes(entry->length - kRecordPrefix);
  if (Crc32(payload) != crc) {
    throw Error(ErrorCode::kChecksum,
                "archive record " + key.ToString() + ": CRC32 mismatch");
  }
  std::vector<float> values(layers * heads * n * n);
  DecodeF32Array(payload, values);
  return AttentionTensor(key, n, layers, heads, std::move(values));
}

}  // namespace coretag
