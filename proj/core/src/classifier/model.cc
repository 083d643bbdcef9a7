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

#include "coretag/classifier/model.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "coretag/util/error.h"
#include "coretag/util/rng.h"

namespace coretag {
namespace {

// Same-size 2-D convolution over a k x k grid with zero padding.
// in: [in_ch][k][k], weight: [out_ch][in_ch][ks][ks], out: [out_ch][k][k].
template <typename W>
void ConvForward(const double* in, std::size_t in_ch, std::size_t k,
                 const W* weight, const W* bias, std::size_t out_ch,
                 std::size_t ks, double* out) {
  const std::ptrdiff_t pad = static_cast<std::ptrdiff_t>(ks / 2);
  const std::ptrdiff_t kk = static_cast<std::ptrdiff_t>(k);
  for (std::size_t o = 0; o < out_ch; ++o) {
    double* dst = out + o * k * k;
    std::fill(dst, dst + k * k, static_cast<double>(bias[o]));
    for (std::size_t i = 0; i < in_ch; ++i) {
      const double* src = in + i * k * k;
      const W* w = weight + (o * in_ch + i) * ks * ks;
      for (std::ptrdiff_t ky = 0; ky < static_cast<std::ptrdiff_t>(ks); ++ky) {
        const std::ptrdiff_t dy = ky - pad;
        const std::ptrdiff_t r0 = std::max<std::ptrdiff_t>(0, -dy);
        const std::ptrdiff_t r1 = std::min<std::ptrdiff_t>(kk, kk - dy);
        for (std::ptrdiff_t kx = 0; kx < static_cast<std::ptrdiff_t>(ks); ++kx) {
          const std::ptrdiff_t dx = kx - pad;
          const std::ptrdiff_t c0 = std::max<std::ptrdiff_t>(0, -dx);
          const std::ptrdiff_t c1 = std::min<std::ptrdiff_t>(kk, kk - dx);
          const double wv = static_cast<double>(w[ky * static_cast<std::ptrdiff_t>(ks) + kx]);
          if (wv == 0.0) continue;
          for (std::ptrdiff_t r = r0; r < r1; ++r) {
            double* drow = dst + r * kk;
            const double* srow = src + (r + dy) * kk + dx;
            for (std::ptrdiff_t c = c0; c < c1; ++c) drow[c] += wv * srow[c];
          }
        }
      }
    }
  }
}

// Accumulates weight/bias gradients and, when d_in is non-null, the input
// gradient of ConvForward.
void ConvBackward(const double* in, std::size_t in_ch, std::size_t k,
                  const float* weight, std::size_t out_ch, std::size_t ks,
                  const double* d_out, double* d_weight, double* d_bias,
                  double* d_in) {
  const std::ptrdiff_t pad = static_cast<std::ptrdiff_t>(ks / 2);
  const std::ptrdiff_t kk = static_cast<std::ptrdiff_t>(k);
  for (std::size_t o = 0; o < out_ch; ++o) {
    const double* g = d_out + o * k * k;
    double bias_sum = 0.0;
    for (std::size_t j = 0; j < k * k; ++j) bias_sum += g[j];
    d_bias[o] += bias_sum;
    for (std::size_t i = 0; i < in_ch; ++i) {
      const double* src = in + i * k * k;
      const float* w = weight + (o * in_ch + i) * ks * ks;
      double* dw = d_weight + (o * in_ch + i) * ks * ks;
      double* din = d_in ? d_in + i * k * k : nullptr;
      for (std::ptrdiff_t ky = 0; ky < static_cast<std::ptrdiff_t>(ks); ++ky) {
        const std::ptrdiff_t dy = ky - pad;
        const std::ptrdiff_t r0 = std::max<std::ptrdiff_t>(0, -dy);
        const std::ptrdiff_t r1 = std::min<std::ptrdiff_t>(kk, kk - dy);
        for (std::ptrdiff_t kx = 0; kx < static_cast<std::ptrdiff_t>(ks); ++kx) {
          const std::ptrdiff_t dx = kx - pad;
          const std::ptrdiff_t c0 = std::max<std::ptrdiff_t>(0, -dx);
          const std::ptrdiff_t c1 = std::min<std::ptrdiff_t>(kk, kk - dx);
          const std::ptrdiff_t widx = ky * static_cast<std::ptrdiff_t>(ks) + kx;
          const double wv = static_cast<double>(w[widx]);
          double acc = 0.0;
          for (std::ptrdiff_t r = r0; r < r1; ++r) {
            const double* grow = g + r * kk;
            const double* srow = src + (r + dy) * kk + dx;
            double* irow = din ? din + (r + dy) * kk + dx : nullptr;
            for (std::ptrdiff_t c = c0; c < c1; ++c) {
              acc += grow[c] * srow[c];
              if (irow) irow[c] += wv * grow[c];
            }
          }
          dw[widx] += acc;
        }
      }
    }
  }
}

// Activations of one forward pass.
struct Trace {
  std::size_t k = 0;
  std::vector<double> input;   // [C][k][k]
  std::vector<double> conv1;   // pre-activation [F1][k][k]
  std::vector<double> act1;    // ReLU(conv1)
  std::vector<double> conv2;   // pre-activation [F2][k][k]
  std::vector<double> act2;    // ReLU(conv2)
  std::vector<double> pooled;  // [F2]
  double logit = 0.0;
};

void CheckFeature(const Architecture& arch, const SpanFeature& feature) {
  if (feature.channels != arch.channels) {
    throw Error(ErrorCode::kInvalidArgument,
                "feature has " + std::to_string(feature.channels) +
                    " channels, model expects " + std::to_string(arch.channels));
  }
  if (feature.size < kMinSpanLength || feature.size > arch.k_max) {
    throw Error(ErrorCode::kInvalidArgument,
                "span size " + std::to_string(feature.size) + " outside [2, " +
                    std::to_string(arch.k_max) + "]");
  }
  if (feature.values.size() != feature.channels * feature.size * feature.size) {
    throw Error(ErrorCode::kInvalidArgument, "feature payload size mismatch");
  }
}

void RunForward(const ModelParams& p, const SpanFeature& feature, Trace& t) {
  const Architecture& a = p.arch;
  CheckFeature(a, feature);
  const std::size_t k = feature.size;
  const std::size_t cells = k * k;
  t.k = k;
  t.input.assign(feature.values.begin(), feature.values.end());
  t.conv1.resize(a.conv1_filters * cells);
  t.act1.resize(t.conv1.size());
  t.conv2.resize(a.conv2_filters * cells);
  t.act2.resize(t.conv2.size());
  t.pooled.assign(a.conv2_filters, 0.0);

  ConvForward(t.input.data(), a.channels, k, p.conv1_weight.data(),
              p.conv1_bias.data(), a.conv1_filters, a.kernel, t.conv1.data());
  for (std::size_t i = 0; i < t.conv1.size(); ++i) {
    t.act1[i] = t.conv1[i] > 0.0 ? t.conv1[i] : 0.0;
  }
  ConvForward(t.act1.data(), a.conv1_filters, k, p.conv2_weight.data(),
              p.conv2_bias.data(), a.conv2_filters, a.kernel, t.conv2.data());
  for (std::size_t i = 0; i < t.conv2.size(); ++i) {
    t.act2[i] = t.conv2[i] > 0.0 ? t.conv2[i] : 0.0;
  }
  double logit = static_cast<double>(p.output_bias[0]);
  for (std::size_t f = 0; f < a.conv2_filters; ++f) {
    double sum = 0.0;
    for (std::size_t j = 0; j < cells; ++j) sum += t.act2[f * cells + j];
    t.pooled[f] = sum / static_cast<double>(cells);
    logit += static_cast<double>(p.output_weight[f]) * t.pooled[f];
  }
  t.logit = logit;
}

// Adds d(loss)/d(params) for one sample with d(loss)/d(logit) = g.
void RunBackward(const ModelParams& p, const Trace& t, double g, Gradients& grad,
                 std::vector<double>& scratch_a, std::vector<double>& scratch_b) {
  const Architecture& a = p.arch;
  const std::size_t cells = t.k * t.k;
  grad.output_bias[0] += g;
  // d(act2) then masked by ReLU -> d(conv2), stored in scratch_a.
  scratch_a.assign(a.conv2_filters * cells, 0.0);
  for (std::size_t f = 0; f < a.conv2_filters; ++f) {
    grad.output_weight[f] += g * t.pooled[f];
    const double d_cell =
        g * static_cast<double>(p.output_weight[f]) / static_cast<double>(cells);
    for (std::size_t j = 0; j < cells; ++j) {
      scratch_a[f * cells + j] = t.conv2[f * cells + j] > 0.0 ? d_cell : 0.0;
    }
  }
  scratch_b.assign(a.conv1_filters * cells, 0.0);
  ConvBackward(t.act1.data(), a.conv1_filters, t.k, p.conv2_weight.data(),
               a.conv2_filters, a.kernel, scratch_a.data(),
               grad.conv2_weight.data(), grad.conv2_bias.data(), scratch_b.data());
  for (std::size_t i = 0; i < scratch_b.size(); ++i) {
    if (!(t.conv1[i] > 0.0)) scratch_b[i] = 0.0;
  }
  ConvBackward(t.input.data(), a.channels, t.k, p.conv1_weight.data(),
               a.conv1_filters, a.kernel, scratch_b.data(),
               grad.conv1_weight.data(), grad.conv1_bias.data(), nullptr);
}

void CheckFiniteParams(const ModelParams& params, const char* when) {
  const auto blocks = params.blocks();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (float v : blocks[b]) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kNumeric, "non-finite parameter in " +
                                             std::string(kParamBlockNames[b]) + " " +
                                             when);
      }
    }
  }
}

double ClampedProbability(double logit) {
  return std::clamp(Sigmoid(logit), kProbabilityClamp, 1.0 - kProbabilityClamp);
}

double SampleLoss(double logit, double label) {
  const double p = ClampedProbability(logit);
  return -(label * std::log(p) + (1.0 - label) * std::log(1.0 - p));
}

// d(SampleLoss)/d(logit); zero where the clamp is active.
double SampleLossGradient(double logit, double label) {
  const double p = Sigmoid(logit);
  if (p <= kProbabilityClamp || p >= 1.0 - kProbabilityClamp) return 0.0;
  return p - label;
}

}  // namespace

std::size_t ParameterCount(const Architecture& arch) {
  return ParamSet<float>(arch).size();
}

void CheckArchitecture(const Architecture& arch) {
  if (arch.channels == 0 || arch.conv1_filters == 0 || arch.conv2_filters == 0 ||
      arch.kernel == 0 || arch.kernel % 2 == 0 || arch.k_max < kMinSpanLength) {
    throw Error(ErrorCode::kInvalidArgument, "unsupported classifier architecture");
  }
}

ModelParams InitializeParams(const Architecture& arch, std::uint64_t seed) {
  CheckArchitecture(arch);
  ModelParams p(arch);
  Rng rng(seed);
  auto fill = [&](std::vector<float>& w, std::size_t fan_in) {
    const double bound = std::sqrt(6.0 / static_cast<double>(fan_in));
    for (float& v : w) v = static_cast<float>(rng.Uniform(-bound, bound));
  };
  const std::size_t window = arch.kernel * arch.kernel;
  fill(p.conv1_weight, arch.channels * window);
  fill(p.conv2_weight, arch.conv1_filters * window);
  fill(p.output_weight, arch.conv2_filters);
  return p;
}

double Sigmoid(double logit) {
  if (logit >= 0.0) return 1.0 / (1.0 + std::exp(-logit));
  const double e = std::exp(logit);
  return e / (1.0 + e);
}

ForwardResult Forward(const ModelParams& params, const SpanFeature& feature) {
  Trace t;
  RunForward(params, feature, t);
  return {Sigmoid(t.logit), t.logit};
}

double BatchLoss(const ModelParams& params, std::span<const Example> batch) {
  if (batch.empty()) throw Error(ErrorCode::kInvalidArgument, "empty batch");
  double total = 0.0;
  Trace t;
  for (const Example& ex : batch) {
    RunForward(params, ex.feature, t);
    total += SampleLoss(t.logit, ex.label);
  }
  return total / static_cast<double>(batch.size());
}

double LossAndGradient(const ModelParams& params, std::span<const Example> batch,
                       Gradients* grad) {
  if (batch.empty()) throw Error(ErrorCode::kInvalidArgument, "empty batch");
  *grad = Gradients(params.arch);
  const double scale = 1.0 / static_cast<double>(batch.size());
  double total = 0.0;
  Trace t;
  std::vector<double> scratch_a, scratch_b;
  for (const Example& ex : batch) {
    if (ex.label != 0.0f && ex.label != 1.0f) {
      throw Error(ErrorCode::kInvalidArgument, "labels must be 0 or 1");
    }
    RunForward(params, ex.feature, t);
    total += SampleLoss(t.logit, ex.label);
    const double g = SampleLossGradient(t.logit, ex.label) * scale;
    if (g != 0.0) RunBackward(params, t, g, *grad, scratch_a, scratch_b);
  }
  return total * scale;
}

double TrainStep(ModelParams& params, AdamState& state,
                 std::span<const Example> batch, const AdamConfig& config) {
  CheckFiniteParams(params, "before update");
  Gradients grad;
  const double loss = LossAndGradient(params, batch, &grad);
  if (!std::isfinite(loss)) {
    throw Error(ErrorCode::kNumeric, "non-finite batch loss");
  }
  const auto grad_blocks = grad.blocks();
  for (std::size_t b = 0; b < grad_blocks.size(); ++b) {
    for (double g : grad_blocks[b]) {
      if (!std::isfinite(g)) {
        throw Error(ErrorCode::kNumeric, "non-finite gradient in " +
                                             std::string(kParamBlockNames[b]));
      }
    }
  }
  state.step += 1;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(config.beta1, t);
  const double correction2 = 1.0 - std::pow(config.beta2, t);
  auto param_blocks = params.blocks();
  auto m_blocks = state.m.blocks();
  auto v_blocks = state.v.blocks();
  for (std::size_t b = 0; b < param_blocks.size(); ++b) {
    auto p = param_blocks[b];
    auto m = m_blocks[b];
    auto v = v_blocks[b];
    auto g = grad_blocks[b];
    for (std::size_t i = 0; i < p.size(); ++i) {
      m[i] = config.beta1 * m[i] + (1.0 - config.beta1) * g[i];
      v[i] = config.beta2 * v[i] + (1.0 - config.beta2) * g[i] * g[i];
      const double m_hat = m[i] / correction1;
      const double v_hat = v[i] / correction2;
      p[i] = static_cast<float>(static_cast<double>(p[i]) -
                                config.learning_rate * m_hat /
                                    (std::sqrt(v_hat) + config.epsilon));
    }
  }
  CheckFiniteParams(params, "after update");
  return loss;
}

}  // namespace coretag
