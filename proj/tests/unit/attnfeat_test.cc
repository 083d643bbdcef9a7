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

#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "coretag/attnfeat/archive.h"
#include "coretag/attnfeat/attention.h"
#include "coretag/attnfeat/providers.h"
#include "coretag/attnfeat/synthetic.h"
#include "coretag/corpus/corpus.h"
#include "coretag/corpus/gold.h"
#include "coretag/util/binary_io.h"
#include "coretag/util/error.h"
#include "coretag/util/jsonl.h"
#include "coretag/util/rng.h"
#include "oracles/oracles.h"
#include "oracles/test_support.h"

namespace coretag {
namespace {

using Words = std::vector<std::string>;

AttentionTensor RandomTensor(Rng& rng, SentenceKey key, std::size_t n, std::size_t layers,
                             std::size_t heads) {
  AttentionTensor t(std::move(key), n, layers, heads);
  for (std::size_t l = 0; l < layers; ++l) {
    for (std::size_t h = 0; h < heads; ++h) {
      for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        auto row = t.row(l, h, i);
        for (auto& v : row) sum += (v = static_cast<float>(rng.Uniform(0.01, 1.0)));
        for (auto& v : row) v = static_cast<float>(v / sum);
      }
    }
  }
  return t;
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kInvalidArgument;
}

TEST(SentenceKeyTest, EncodeDecodeRoundTrip) {
  SentenceKey k{"doc-1", 17};
  EXPECT_EQ(SentenceKey::Decode(k.Encode()), k);
  EXPECT_EQ(k.ToString(), "doc-1#17");
  EXPECT_LT((SentenceKey{"a", 2}), (SentenceKey{"a", 10}));
  EXPECT_THROW(SentenceKey::Decode("no-separator"), Error);
}

TEST(HashProviderTest, DeterministicAndNormalized) {
  HashAttentionProvider p(7);
  const Words words = {"coal", "mines", "emit", "heat", "."};
  const auto a = p.Compute({"d", 0}, words);
  const auto b = p.Compute({"d", 0}, words);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.layers(), 3u);
  EXPECT_EQ(a.heads(), 12u);
  EXPECT_EQ(a.n_words(), 5u);
  EXPECT_LE(a.MaxRowSumError(), 1e-4);
  EXPECT_NO_THROW(a.CheckInvariants());
  HashAttentionProvider other(8);
  EXPECT_FALSE(other.Compute({"d", 0}, words) == a);
}

TEST(HashProviderTest, TruncatesLongSentences) {
  HashAttentionProvider p(1);
  SentenceTokens s;
  for (int i = 0; i < 100; ++i) s.words.push_back("w" + std::to_string(i));
  EXPECT_EQ(TruncatedLength(s), kMaxSentenceWords);
  const auto t = ComputeAttention(p, {"d", 0}, s);
  EXPECT_EQ(t.n_words(), kMaxSentenceWords);
  EXPECT_LE(t.MaxRowSumError(), 1e-4);
}

TEST(PlantedProviderTest, WithinSpanMassExceedsOutside) {
  PlantedAttentionParams params;
  params.seed = 3;
  params.phrases = {{"p", "q", "r"}};
  PlantedAttentionProvider provider(params);
  const Words words = {"x", "y", "p", "q", "r", "z", "w"};
  ASSERT_EQ(provider.PlantedSpans(words),
            (std::vector<std::pair<std::size_t, std::size_t>>{{2, 5}}));
  const auto t = provider.Compute({"d", 0}, words);
  EXPECT_LE(t.MaxRowSumError(), 1e-4);
  double in_sum = 0.0, out_sum = 0.0;
  std::size_t in_n = 0, out_n = 0;
  for (std::size_t l = 0; l < t.layers(); ++l) {
    for (std::size_t h = 0; h < t.heads(); ++h) {
      for (std::size_t i = 2; i < 5; ++i) {
        for (std::size_t j = 0; j < words.size(); ++j) {
          if (j >= 2 && j < 5) {
            in_sum += t.at(l, h, i, j);
            ++in_n;
          } else {
            out_sum += t.at(l, h, i, j);
            ++out_n;
          }
        }
      }
    }
  }
  EXPECT_GT(in_sum / static_cast<double>(in_n), out_sum / static_cast<double>(out_n));
}

TEST(PlantedProviderTest, ZeroDeltaIgnoresPhrases) {
  PlantedAttentionParams params;
  params.delta = 0.0;
  params.phrases = {{"p", "q"}};
  PlantedAttentionProvider with(params);
  params.phrases.clear();
  PlantedAttentionProvider without(params);
  const Words words = {"x", "p", "q", "y"};
  const auto a = with.Compute({"d", 0}, words);
  const auto b = without.Compute({"d", 0}, words);
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    EXPECT_NEAR(a.values()[i], b.values()[i], 1e-7);
  }
}

TEST(PlantedProviderTest, ParamsJsonRoundTrip) {
  PlantedAttentionParams p;
  p.seed = 9;
  p.delta = 4.5;
  p.phrases = {{"a", "b"}, {"c", "d", "e"}};
  const auto q = PlantedAttentionParams::FromJson(p.ToJson());
  EXPECT_EQ(q.seed, 9u);
  EXPECT_EQ(q.delta, 4.5);
  EXPECT_EQ(q.phrases, p.phrases);
  EXPECT_EQ(CodeOf([] { PlantedAttentionParams::FromJson("{}"); }), ErrorCode::kFormat);
}

TEST(SpanFeatureTest, WholeSentenceIsFullTensor) {
  Rng rng(1);
  const auto t = RandomTensor(rng, {"d", 0}, 5, 3, 12);
  const auto f = ExtractSpanFeature(t, Span{0, 0, 5});
  EXPECT_EQ(f.channels, 36u);
  EXPECT_EQ(f.size, 5u);
  EXPECT_TRUE(std::equal(f.values.begin(), f.values.end(), t.values().begin(),
                         t.values().end()));
}

TEST(SpanFeatureTest, CropMatchesDirectIndexing) {
  Rng rng(2);
  const auto t = RandomTensor(rng, {"d", 0}, 8, 3, 12);
  const auto f = ExtractSpanFeature(t, Span{0, 1, 4});
  ASSERT_EQ(f.size, 3u);
  for (std::size_t c = 0; c < 36; ++c) {
    for (std::size_t r = 0; r < 3; ++r) {
      for (std::size_t s = 0; s < 3; ++s) {
        EXPECT_EQ(f.at(c, r, s), t.at(c / 12, c % 12, 1 + r, 1 + s));
      }
    }
  }
}

TEST(SpanFeatureTest, RejectsShortOrOutOfBoundsSpans) {
  Rng rng(3);
  const auto t = RandomTensor(rng, {"d", 0}, 4, 1, 2);
  EXPECT_THROW(ExtractSpanFeature(t, Span{0, 1, 2}), Error);
  EXPECT_THROW(ExtractSpanFeature(t, Span{0, 3, 5}), Error);
  EXPECT_THROW(ExtractSpanFeature(t, Span{1, 0, 2}), Error);
}

TEST(AttentionTensorTest, InvariantViolations) {
  AttentionTensor t({"d", 0}, 2, 1, 1, {0.5f, 0.5f, 0.9f, 0.3f});
  EXPECT_THROW(t.CheckInvariants(), Error);
  AttentionTensor neg({"d", 0}, 2, 1, 1, {1.5f, -0.5f, 0.5f, 0.5f});
  EXPECT_THROW(neg.CheckInvariants(), Error);
  EXPECT_THROW(AttentionTensor({"d", 0}, 2, 1, 1, {1.0f}), Error);
}

std::vector<AttentionTensor> RandomTensors(std::uint64_t seed, std::size_t count) {
  Rng rng(seed);
  std::vector<AttentionTensor> out;
  for (std::size_t i = 0; i < count; ++i) {
    const auto n = static_cast<std::size_t>(rng.Between(1, 9));
    out.push_back(RandomTensor(rng, {"doc" + std::to_string(i % 4), i}, n, 3, 12));
  }
  return out;
}

TEST(ArchiveTest, RoundTripTenTensors) {
  testing::TempDir dir;
  const auto tensors = RandomTensors(5, 10);
  WriteArchive(dir / "a.ucat", tensors);
  const auto reader = ArchiveReader::Open(dir / "a.ucat");
  EXPECT_EQ(reader.size(), 10u);
  for (const auto& t : tensors) {
    EXPECT_TRUE(reader.Contains(t.key()));
    EXPECT_EQ(reader.Read(t.key()), t);
  }
  const auto keys = reader.Keys();
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
    return a.Encode() < b.Encode();
  }));
}

TEST(ArchiveTest, StreamingWriterMatchesEncoder) {
  testing::TempDir dir;
  const auto tensors = RandomTensors(6, 12);
  {
    ArchiveWriter w(dir / "s.ucat");
    for (const auto& t : tensors) w.Add(t);
    w.Finish();
  }
  EXPECT_EQ(ReadFileBytes(dir / "s.ucat"), EncodeArchive(tensors));
}

TEST(ArchiveTest, WriterRejectsDuplicatesAndBadRows) {
  testing::TempDir dir;
  Rng rng(1);
  const auto t = RandomTensor(rng, {"d", 0}, 3, 1, 1);
  ArchiveWriter w(dir / "d.ucat");
  w.Add(t);
  EXPECT_THROW(w.Add(t), Error);
  AttentionTensor bad({"d", 1}, 2, 1, 1, {0.9f, 0.9f, 0.5f, 0.5f});
  EXPECT_THROW(w.Add(bad), Error);
  w.Finish();
  EXPECT_EQ(ArchiveReader::Open(dir / "d.ucat").size(), 1u);
}

TEST(ArchiveTest, AbsentKeyIsNotFound) {
  const auto bytes = EncodeArchive(RandomTensors(7, 3));
  ArchiveReader reader(std::make_shared<MemoryByteSource>(bytes));
  EXPECT_EQ(CodeOf([&] { reader.Read({"nope", 0}); }), ErrorCode::kNotFound);
}

TEST(ArchiveTest, DistinctErrorsForVersionTruncationChecksum) {
  const auto tensors = RandomTensors(8, 3);
  const auto bytes = EncodeArchive(tensors);

  auto version = bytes;
  version[4] = 2;
  EXPECT_EQ(CodeOf([&] { ArchiveReader(std::make_shared<MemoryByteSource>(version)); }),
            ErrorCode::kVersion);

  auto magic = bytes;
  magic[0] = 'X';
  EXPECT_EQ(CodeOf([&] { ArchiveReader(std::make_shared<MemoryByteSource>(magic)); }),
            ErrorCode::kFormat);

  std::vector<std::uint8_t> truncated(bytes.begin(), bytes.end() - 5);
  EXPECT_EQ(CodeOf([&] { ArchiveReader(std::make_shared<MemoryByteSource>(truncated)); }),
            ErrorCode::kFormat);
  std::vector<std::uint8_t> header_only(bytes.begin(), bytes.begin() + 10);
  EXPECT_EQ(CodeOf([&] { ArchiveReader(std::make_shared<MemoryByteSource>(header_only)); }),
            ErrorCode::kFormat);

  auto flipped = bytes;
  flipped.back() ^= 0x01;
  ArchiveReader reader(std::make_shared<MemoryByteSource>(flipped));
  bool saw_checksum = false;
  for (const auto& t : tensors) {
    try {
      reader.Read(t.key());
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kChecksum);
      saw_checksum = true;
    }
  }
  EXPECT_TRUE(saw_checksum);
}

TEST(ArchiveTest, LookupReadsOnlyIndexAndOneRecord) {
  const auto tensors = RandomTensors(9, 200);
  const auto bytes = EncodeArchive(tensors);
  auto counting = std::make_shared<oracle::CountingByteSource>(
      std::make_shared<MemoryByteSource>(bytes));
  ArchiveReader reader(counting);
  const std::uint64_t index_bytes = counting->bytes_read();
  counting->Reset();
  const auto t = reader.Read(tensors[123].key());
  EXPECT_EQ(t, tensors[123]);
  EXPECT_EQ(counting->bytes_read(), 8 + 4ULL * t.values().size());
  EXPECT_LT(index_bytes, bytes.size() / 4);
}

TEST(ArchiveProviderTest, ServesTensorsAndChecksWordCount) {
  testing::TempDir dir;
  const auto tensors = RandomTensors(10, 4);
  WriteArchive(dir / "a.ucat", tensors);
  const auto provider = ArchiveAttentionProvider::Open(dir / "a.ucat");
  EXPECT_EQ(provider->layers(), 3u);
  EXPECT_EQ(provider->heads(), 12u);
  const auto& t = tensors[2];
  const Words words(t.n_words(), "w");
  EXPECT_EQ(provider->Compute(t.key(), words), t);
  const Words wrong(t.n_words() + 1, "w");
  EXPECT_THROW(provider->Compute(t.key(), wrong), Error);
  try {
    provider->Compute({"missing", 3}, words);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotFound);
    EXPECT_NE(std::string(e.what()).find("missing#3"), std::string::npos);
  }
}

TEST(SyntheticCorpusTest, EmptyCorpus) {
  SyntheticCorpusOptions o;
  o.n_docs = 0;
  const auto c = GenerateSyntheticCorpus(o);
  EXPECT_TRUE(c.docs.empty());
  EXPECT_TRUE(c.gold_spans.empty());
  EXPECT_TRUE(c.gold_keyphrases.empty());
}

TEST(SyntheticCorpusTest, DeterministicBytes) {
  testing::TempDir dir;
  SyntheticCorpusOptions o;
  o.n_docs = 20;
  o.seed = 4;
  WriteCorpus(dir / "a.jsonl", GenerateSyntheticCorpus(o).docs);
  WriteCorpus(dir / "b.jsonl", GenerateSyntheticCorpus(o).docs);
  EXPECT_EQ(ReadTextFile(dir / "a.jsonl"), ReadTextFile(dir / "b.jsonl"));
  o.seed = 5;
  WriteCorpus(dir / "c.jsonl", GenerateSyntheticCorpus(o).docs);
  EXPECT_NE(ReadTextFile(dir / "a.jsonl"), ReadTextFile(dir / "c.jsonl"));
}

TEST(SyntheticCorpusTest, GoldSpansAreBankPhrases) {
  SyntheticCorpusOptions o;
  o.n_docs = 30;
  o.seed = 2;
  const auto c = GenerateSyntheticCorpus(o);
  ASSERT_EQ(c.docs.size(), 30u);
  EXPECT_EQ(c.planted.phrases.size(), 40u);
  PlantedAttentionProvider provider(c.planted);
  std::size_t spans = 0;
  std::size_t gi = 0;
  for (const auto& doc : c.docs) {
    // Text round-trips through the tokenizer.
    EXPECT_EQ(MakeDocument(doc.id, doc.raw_text).sentences, doc.sentences);
    for (std::size_t s = 0; s < doc.sentences.size(); ++s, ++gi) {
      ASSERT_LT(gi, c.gold_spans.size());
      const auto& g = c.gold_spans[gi];
      EXPECT_EQ(g.id, doc.id);
      EXPECT_EQ(g.sent_idx, s);
      EXPECT_EQ(provider.PlantedSpans(doc.sentences[s].words), g.spans);
      spans += g.spans.size();
    }
  }
  EXPECT_EQ(gi, c.gold_spans.size());
  EXPECT_GT(spans, 30u);
}

}  // namespace
}  // namespace coretag
