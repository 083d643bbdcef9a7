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

#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "coretag/attnfeat/synthetic.h"
#include "coretag/labelgen/core_miner.h"
#include "coretag/labelgen/gazetteer.h"

namespace coretag {
namespace {

const SyntheticCorpus& Corpus() {
  static const SyntheticCorpus corpus = [] {
    SyntheticCorpusOptions opt;
    opt.n_docs = 200;
    opt.seed = 1;
    return GenerateSyntheticCorpus(opt);
  }();
  return corpus;
}

void BM_MineCorePhrases(benchmark::State& state) {
  const auto& docs = Corpus().docs;
  MiningOptions opt;
  opt.k_max = static_cast<std::size_t>(state.range(0));
  std::size_t words = 0;
  for (const auto& d : docs) words += d.WordCount();
  for (auto _ : state) {
    std::size_t labels = 0;
    for (const auto& d : docs) labels += MineCorePhrases(d, opt).size();
    benchmark::DoNotOptimize(labels);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * words));
}
BENCHMARK(BM_MineCorePhrases)->Arg(2)->Arg(4)->Arg(6);

void BM_GazetteerMatch(benchmark::State& state) {
  const auto& corpus = Corpus();
  Gazetteer gazetteer;
  for (const auto& phrase : corpus.planted.phrases) gazetteer.AddTokens(phrase);
  for (auto _ : state) {
    std::size_t labels = 0;
    for (const auto& d : corpus.docs) labels += GazetteerMatch(d, gazetteer, 6).size();
    benchmark::DoNotOptimize(labels);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * corpus.docs.size()));
}
BENCHMARK(BM_GazetteerMatch);

}  // namespace
}  // namespace coretag
