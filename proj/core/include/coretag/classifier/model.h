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

#ifndef CORETAG_CLASSIFIER_MODEL_H_
#define CORETAG_CLASSIFIER_MODEL_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "coretag/attnfeat/attention.h"

namespace coretag {

// Span classifier: conv3x3(C -> F1) + ReLU, conv3x3(F1 -> F2) + ReLU,
// masked global average pooling, logistic output.
//
// Crops of k < k_max words are conceptually zero-padded to k_max x k_max;
// activations outside the valid k x k region are masked to zero after every
// layer and excluded from pooling, so the result only depends on the k x k
// crop and never on k_max.
struct Architecture {
  std::size_t channels = kDefaultLayers * kDefaultHeads;
  std::size_t conv1_filters = 32;
  std::size_t conv2_filters = 32;
  std::size_t kernel = 3;
  std::size_t k_max = 6;

  bool operator==(const Architecture&) const = default;
};

inline constexpr std::array<std::string_view, 6> kParamBlockNames = {
    "conv1.weight", "conv1.bias",  "conv2.weight",
    "conv2.bias",   "output.weight", "output.bias"};

// All trainable tensors. Weights are [out][in][ky][kx] row-major.
template <typename T>
struct ParamSet {
  Architecture arch;
  std::vector<T> conv1_weight;
  std::vector<T> conv1_bias;
  std::vector<T> conv2_weight;
  std::vector<T> conv2_bias;
  std::vector<T> output_weight;
  std::vector<T> output_bias;

  ParamSet() = default;
  explicit ParamSet(const Architecture& a)
      : arch(a),
        conv1_weight(a.conv1_filters * a.channels * a.kernel * a.kernel),
        conv1_bias(a.conv1_filters),
        conv2_weight(a.conv2_filters * a.conv1_filters * a.kernel * a.kernel),
        conv2_bias(a.conv2_filters),
        output_weight(a.conv2_filters),
        output_bias(1) {}

  // Blocks in kParamBlockNames order.
  std::array<std::span<T>, 6> blocks() {
    return {conv1_weight, conv1_bias, conv2_weight,
            conv2_bias,   output_weight, output_bias};
  }
  std::array<std::span<const T>, 6> blocks() const {
    return {conv1_weight, conv1_bias, conv2_weight,
            conv2_bias,   output_weight, output_bias};
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (auto b : blocks()) n += b.size();
    return n;
  }

  bool operator==(const ParamSet&) const = default;
};

using ModelParams = ParamSet<float>;
using Gradients = ParamSet<double>;

// Number of trainable scalars for an architecture.
std::size_t ParameterCount(const Architecture& arch);

// Throws Error(kInvalidArgument) for unsupported architectures (even kernel,
// zero sizes, k_max < 2).
void CheckArchitecture(const Architecture& arch);

// Weights uniform in +-sqrt(6 / fan_in), biases zero. Deterministic in seed.
ModelParams InitializeParams(const Architecture& arch, std::uint64_t seed);

struct ForwardResult {
  double probability = 0.5;
  double logit = 0.0;
};

double Sigmoid(double logit);

// Errors: channel mismatch or span size outside [2, k_max] ->
// Error(kInvalidArgument).
ForwardResult Forward(const ModelParams& params, const SpanFeature& feature);

struct Example {
  SpanFeature feature;
  float label = 0.0f;  // 1 = phrase, 0 = not a phrase
};

// Probabilities are clamped to [1e-7, 1 - 1e-7] inside the loss.
inline constexpr double kProbabilityClamp = 1e-7;

// Mean binary cross-entropy over `batch`.
double BatchLoss(const ModelParams& params, std::span<const Example> batch);

// Mean binary cross-entropy and its exact gradient. `grad` is resized and
// overwritten.
double LossAndGradient(const ModelParams& params, std::span<const Example> batch,
                       Gradients* grad);

struct AdamConfig {
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  explicit AdamState(const Architecture& arch) : m(arch), v(arch) {}
  std::uint64_t step = 0;
  Gradients m;
  Gradients v;
};

// One optimizer step on `batch`; returns the batch loss before the update.
// A non-finite loss or gradient raises Error(kNumeric) naming the parameter
// block, leaving params and state untouched.
double TrainStep(ModelParams& params, AdamState& state,
                 std::span<const Example> batch, const AdamConfig& config);

}  // namespace coretag

#endif  // CORETAG_CLASSIFIER_MODEL_H_
