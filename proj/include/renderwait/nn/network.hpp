// Copyright 2026 The renderwait Authors
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
#pragma once

#include <cstdint>
#include <vector>

#include "renderwait/nn/layers.hpp"

namespace renderwait::nn {

struct BlockSpec {
  std::size_t out_channels;
  int stride;
  friend bool operator==(const BlockSpec&, const BlockSpec&) = default;
};

struct NetConfig {
  // Portrait phone aspect (7:12). The full-resolution setting is 448 x 768.
  std::size_t input_width = 56;
  std::size_t input_height = 96;
  std::size_t input_channels = 1;
  std::size_t stem_channels = 8;
  std::size_t expansion = 6;
  std::vector<BlockSpec> blocks{{16, 2}, {16, 1}, {24, 2}, {24, 1}};
  double bn_momentum = 0.1;
  double bn_eps = 1e-5;

  static NetConfig full_resolution() {
    NetConfig c;
    c.input_width = 448;
    c.input_height = 768;
    return c;
  }

  void validate() const;
  friend bool operator==(const NetConfig&, const NetConfig&) = default;
};

// Stem 3x3/2 conv -> BN -> ReLU6 -> inverted residual blocks -> global average
// pool -> linear head producing one logit per image.
template <typename T>
class RenderNet {
 public:
  explicit RenderNet(NetConfig config);
  RenderNet(const RenderNet&) = delete;
  RenderNet& operator=(const RenderNet&) = delete;
  RenderNet(RenderNet&&) = default;
  RenderNet& operator=(RenderNet&&) = default;

  const NetConfig& config() const { return config_; }

  void init(std::uint64_t seed);

  // x [N, C, H, W] -> logits [N, 1]
  BasicTensor<T> forward(const BasicTensor<T>& x, Mode mode);
  BasicTensor<T> infer(const BasicTensor<T>& x) const;
  // Returns the input gradient; parameter gradients accumulate.
  BasicTensor<T> backward(const BasicTensor<T>& dlogits);

  std::vector<Parameter<T>*> parameters();
  std::vector<NamedBuffer<T>> buffers();
  void zero_grad();

  InvertedResidual<T>& block(std::size_t i) { return *blocks_.at(i); }

 private:
  NetConfig config_;
  Sequential<T> body_;
  std::vector<InvertedResidual<T>*> blocks_;
};

extern template class RenderNet<float>;
extern template class RenderNet<double>;

using Network = RenderNet<float>;

// Mean binary cross-entropy on logits, computed as
// max(z, 0) - z t + log(1 + exp(-|z|)). Targets must be 0 or 1.
template <typename T>
double bce_with_logits(const BasicTensor<T>& logits, const BasicTensor<T>& targets,
                       BasicTensor<T>* dlogits = nullptr);

extern template double bce_with_logits<float>(const BasicTensor<float>&, const BasicTensor<float>&,
                                              BasicTensor<float>*);
extern template double bce_with_logits<double>(const BasicTensor<double>&,
                                               const BasicTensor<double>&, BasicTensor<double>*);

double sigmoid(double z);

struct LrSchedule {
  double initial = 0.01;
  int halve_every = 10;

  // initial * 0.5^floor(epoch / halve_every)
  double rate(int epoch) const;
};

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

template <typename T>
class Adam {
 public:
  explicit Adam(std::vector<Parameter<T>*> params, AdamConfig config = {});

  // One bias-corrected update using the parameters' accumulated gradients.
  void step(double learning_rate);
  std::uint64_t steps() const { return step_; }

 private:
  AdamConfig config_;
  std::vector<Parameter<T>*> params_;
  std::vector<BasicTensor<T>> m_;
  std::vector<BasicTensor<T>> v_;
  std::uint64_t step_ = 0;
};

extern template class Adam<float>;
extern template class Adam<double>;

}  // namespace renderwait::nn
