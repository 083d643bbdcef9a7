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

#include <memory>
#include <vector>

#include <benchmark/benchmark.h>

#include "coretag/attnfeat/archive.h"
#include "coretag/attnfeat/providers.h"
#include "coretag/attnfeat/synthetic.h"

namespace coretag {
namespace {

struct Fixture {
  std::vector<SentenceKey> keys;
  std::vector<std::uint8_t> bytes;
};

const Fixture& Archive() {
  static const Fixture fixture = [] {
    SyntheticCorpusOptions opt;
    opt.n_docs = 50;
    const auto corpus = GenerateSyntheticCorpus(opt);
    const PlantedAttentionProvider provider(corpus.planted);
    Fixture f;
    std::vector<AttentionTensor> tensors;
    for (const auto& doc : corpus.docs) {
      for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
        f.keys.push_back({doc.id, s});
        tensors.push_back(ComputeAttention(provider, f.keys.back(), doc.sentences[s]));
      }
    }
    f.bytes = EncodeArchive(tensors);
    return f;
  }();
  return fixture;
}

void BM_ArchiveOpen(benchmark::State& state) {
  const auto& f = Archive();
  const auto source = std::make_shared<MemoryByteSource>(f.bytes);
  for (auto _ : state) benchmark::DoNotOptimize(ArchiveReader(source).size());
}
BENCHMARK(BM_ArchiveOpen);

void BM_ArchiveRead(benchmark::State& state) {
  const auto& f = Archive();
  const ArchiveReader reader(std::make_shared<MemoryByteSource>(f.bytes));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(reader.Read(f.keys[i]));
    i = (i + 1) % f.keys.size();
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(
      state.iterations() * (f.bytes.size() / f.keys.size())));
}
BENCHMARK(BM_ArchiveRead);

}  // namespace
}  // namespace coretag
