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

#include <vector>

#include <benchmark/benchmark.h>

#include "coretag/classifier/model.h"
#include "coretag/util/rng.h"

namespace coretag {
namespace {

SpanFeature RandomFeature(Rng& rng, std::size_t channels, std::size_t k) {
  SpanFeature f;
  f.channels = channels;
  f.size = k;
  f.values.resize(channels * k * k);
  for (float& v : f.values) v = static_cast<float>(rng.Uniform(0.0, 1.0));
  return f;
}

void BM_Forward(benchmark::State& state) {
  const Architecture arch;
  const auto params = InitializeParams(arch, 1);
  Rng rng(2);
  const auto feature = RandomFeature(rng, arch.channels, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Forward(params, feature));
}
BENCHMARK(BM_Forward)->DenseRange(2, 6);

void BM_TrainStep(benchmark::State& state) {
  const Architecture arch;
  auto params = InitializeParams(arch, 1);
  AdamState adam(arch);
  Rng rng(3);
  std::vector<Example> batch;
  for (int i = 0; i < state.range(0); ++i) {
    batch.push_back({RandomFeature(rng, arch.channels, 2 + rng.Below(5)),
                     static_cast<float>(rng.Below(2))});
  }
  for (auto _ : state) benchmark::DoNotOptimize(TrainStep(params, adam, batch, {}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TrainStep)->Arg(32)->Arg(128);

}  // namespace
}  // namespace coretag
