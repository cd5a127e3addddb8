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
#include "renderwait/nn/network.hpp"

#include <cmath>
#include <stdexcept>

namespace renderwait::nn {

void NetConfig::validate() const {
  if (input_width < 8 || input_height < 8) throw std::invalid_argument("network input is too small");
  if (input_channels != 1 && input_channels != 3) {
    throw std::invalid_argument("network input must have 1 or 3 channels");
  }
  if (stem_channels == 0 || expansion == 0 || blocks.empty()) {
    throw std::invalid_argument("network needs a stem, an expansion ratio and at least one block");
  }
  for (const BlockSpec& b : blocks) {
    if (b.out_channels == 0 || (b.stride != 1 && b.stride != 2)) {
      throw std::invalid_argument("block needs positive width and stride 1 or 2");
    }
  }
  if (!(bn_momentum > 0.0 && bn_momentum <= 1.0) || !(bn_eps > 0.0)) {
    throw std::invalid_argument("batch norm momentum must be in (0, 1] and eps positive");
  }
}

template <typename T>
RenderNet<T>::RenderNet(NetConfig config) : config_(std::move(config)) {
  config_.validate();
  body_.template add<Conv3x3<T>>("stem.conv", config_.input_channels, config_.stem_channels, 2);
  body_.template add<BatchNorm<T>>("stem.bn", config_.stem_channels, config_.bn_momentum,
                                   config_.bn_eps);
  body_.template add<ReLU6<T>>();
  std::size_t channels = config_.stem_channels;
  for (std::size_t i = 0; i < config_.blocks.size(); ++i) {
    const BlockSpec& b = config_.blocks[i];
    blocks_.push_back(&body_.template add<InvertedResidual<T>>(
        "blocks." + std::to_string(i), channels, b.out_channels, b.stride, config_.expansion,
        config_.bn_momentum, config_.bn_eps));
    channels = b.out_channels;
  }
  body_.template add<GlobalAvgPool<T>>();
  body_.template add<Linear<T>>("head", channels, 1);
}

template <typename T>
void RenderNet<T>::init(std::uint64_t seed) {
  Rng rng(seed);
  body_.init(rng);
}

template <typename T>
BasicTensor<T> RenderNet<T>::forward(const BasicTensor<T>& x, Mode mode) {
  return body_.forward(x, mode);
}

template <typename T>
BasicTensor<T> RenderNet<T>::infer(const BasicTensor<T>& x) const {
  return body_.infer(x);
}

template <typename T>
BasicTensor<T> RenderNet<T>::backward(const BasicTensor<T>& dlogits) {
  return body_.backward(dlogits);
}

template <typename T>
std::vector<Parameter<T>*> RenderNet<T>::parameters() {
  std::vector<Parameter<T>*> p;
  body_.collect(p);
  return p;
}

template <typename T>
std::vector<NamedBuffer<T>> RenderNet<T>::buffers() {
  std::vector<NamedBuffer<T>> b;
  body_.collect_buffers(b);
  return b;
}

template <typename T>
void RenderNet<T>::zero_grad() {
  for (Parameter<T>* p : parameters()) p->zero_grad();
}

template class RenderNet<float>;
template class RenderNet<double>;

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

template <typename T>
double bce_with_logits(const BasicTensor<T>& logits, const BasicTensor<T>& targets,
                       BasicTensor<T>* dlogits) {
  require_shape(targets.shape(), logits.shape(), "bce targets");
  if (logits.size() == 0) throw std::invalid_argument("bce on an empty batch");
  const double n = static_cast<double>(logits.size());
  if (dlogits) *dlogits = BasicTensor<T>(logits.shape());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    const double z = logits[i];
    const double t = targets[i];
    if (t != 0.0 && t != 1.0) throw std::invalid_argument("bce targets must be 0 or 1");
    if (!std::isfinite(z)) throw std::invalid_argument("bce logits must be finite");
    total += std::max(z, 0.0) - z * t + std::log1p(std::exp(-std::abs(z)));
    if (dlogits) (*dlogits)[i] = static_cast<T>((sigmoid(z) - t) / n);
  }
  return total / n;
}

template double bce_with_logits<float>(const BasicTensor<float>&, const BasicTensor<float>&,
                                       BasicTensor<float>*);
template double bce_with_logits<double>(const BasicTensor<double>&, const BasicTensor<double>&,
                                        BasicTensor<double>*);

double LrSchedule::rate(int epoch) const {
  if (epoch < 0) throw std::invalid_argument("epoch must be non-negative");
  return std::ldexp(initial, -(epoch / halve_every));
}

template <typename T>
Adam<T>::Adam(std::vector<Parameter<T>*> params, AdamConfig config)
    : config_(config), params_(std::move(params)) {
  for (Parameter<T>* p : params_) {
    require_shape(p->grad.shape(), p->value.shape(), "adam gradient");
    m_.emplace_back(p->value.shape());
    v_.emplace_back(p->value.shape());
  }
}

template <typename T>
void Adam<T>::step(double learning_rate) {
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning rate must be positive");
  ++step_;
  const double b1 = config_.beta1, b2 = config_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(step_));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(step_));
  for (std::size_t k = 0; k < params_.size(); ++k) {
    Parameter<T>& p = *params_[k];
    require_shape(p.grad.shape(), p.value.shape(), "adam gradient");
    BasicTensor<T>& m = m_[k];
    BasicTensor<T>& v = v_[k];
    for (std::size_t i = 0; i < p.value.size(); ++i) {
      const double g = p.grad[i];
      const double mi = b1 * m[i] + (1.0 - b1) * g;
      const double vi = b2 * v[i] + (1.0 - b2) * g * g;
      m[i] = static_cast<T>(mi);
      v[i] = static_cast<T>(vi);
      const double update = learning_rate * (mi / c1) / (std::sqrt(vi / c2) + config_.eps);
      p.value[i] = static_cast<T>(p.value[i] - update);
    }
  }
}

template class Adam<float>;
template class Adam<double>;

}  // namespace renderwait::nn
