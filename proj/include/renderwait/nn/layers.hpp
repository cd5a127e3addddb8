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

#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "renderwait/common/random.hpp"
#include "renderwait/nn/kernels.hpp"

namespace renderwait::nn {

// FrozenGates is a Train-mode forward in which every ReLU6 keeps the gate
// pattern of its last Train forward. It evaluates the linear piece that
// backward() differentiates, which finite-difference checks need.
enum class Mode { Train, Eval, FrozenGates };

template <typename T>
struct NamedBuffer {
  std::string name;
  BasicTensor<T>* tensor;
};

// A layer caches what it needs during forward() and consumes it in backward().
// infer() is the const, cache-free evaluation path used by deployed models.
template <typename T>
class Layer {
 public:
  virtual ~Layer() = default;
  virtual BasicTensor<T> forward(const BasicTensor<T>& x, Mode mode) = 0;
  virtual BasicTensor<T> infer(const BasicTensor<T>& x) const = 0;
  // Accumulates parameter gradients and returns the input gradient.
  virtual BasicTensor<T> backward(const BasicTensor<T>& dy) = 0;
  virtual void collect(std::vector<Parameter<T>*>&) {}
  virtual void collect_buffers(std::vector<NamedBuffer<T>>&) {}
  virtual void init(Rng&) {}
};

namespace detail {

// He-uniform: bound sqrt(6 / fan_in).
template <typename T>
void kaiming_uniform(BasicTensor<T>& w, std::size_t fan_in, Rng& rng) {
  const double bound = std::sqrt(6.0 / static_cast<double>(fan_in));
  for (T& v : w.data()) v = static_cast<T>(rng.uniform(-bound, bound));
}

}  // namespace detail

template <typename T>
class Conv3x3 final : public Layer<T> {
 public:
  Conv3x3(std::string name, std::size_t in, std::size_t out, int stride)
      : stride_(stride), weight_(std::move(name) + ".weight", {out, in, 3, 3}) {}

  BasicTensor<T> forward(const BasicTensor<T>& x, Mode) override {
    input_ = x;
    return conv3x3(x, weight_.value, stride_);
  }
  BasicTensor<T> infer(const BasicTensor<T>& x) const override { return conv3x3(x, weight_.value, stride_); }
  BasicTensor<T> backward(const BasicTensor<T>& dy) override {
    BasicTensor<T> dx(input_.shape());
    conv3x3_backward(input_, weight_.value, stride_, dy, &dx, weight_.grad);
    return dx;
  }
  void collect(std::vector<Parameter<T>*>& p) override { p.push_back(&weight_); }
  void init(Rng& rng) override { detail::kaiming_uniform(weight_.value, weight_.value.dim(1) * 9, rng); }

 private:
  int stride_;
  Parameter<T> weight_;
  BasicTensor<T> input_;
};

template <typename T>
class DepthwiseConv3x3 final : public Layer<T> {
 public:
  DepthwiseConv3x3(std::string name, std::size_t channels, int stride)
      : stride_(stride), weight_(std::move(name) + ".weight", {channels, 1, 3, 3}) {}

  BasicTensor<T> forward(const BasicTensor<T>& x, Mode) override {
    input_ = x;
    return depthwise_conv3x3(x, weight_.value, stride_);
  }
  BasicTensor<T> infer(const BasicTensor<T>& x) const override {
    return depthwise_conv3x3(x, weight_.value, stride_);
  }
  BasicTensor<T> backward(const BasicTensor<T>& dy) override {
    BasicTensor<T> dx(input_.shape());
    depthwise_conv3x3_backward(input_, weight_.value, stride_, dy, &dx, weight_.grad);
    return dx;
  }
  void collect(std::vector<Parameter<T>*>& p) override { p.push_back(&weight_); }
  void init(Rng& rng) override { detail::kaiming_uniform(weight_.value, 9, rng); }

  Parameter<T>& weight() { return weight_; }

 private:
  int stride_;
  Parameter<T> weight_;
  BasicTensor<T> input_;
};

template <typename T>
class PointwiseConv1x1 final : public Layer<T> {
 public:
  PointwiseConv1x1(std::string name, std::size_t in, std::size_t out)
      : weight_(std::move(name) + ".weight", {out, in, 1, 1}) {}

  BasicTensor<T> forward(const BasicTensor<T>& x, Mode) override {
    input_ = x;
    return pointwise_conv1x1(x, weight_.value);
  }
  BasicTensor<T> infer(const BasicTensor<T>& x) const override { return pointwise_conv1x1(x, weight_.value); }
  BasicTensor<T> backward(const BasicTensor<T>& dy) override {
    BasicTensor<T> dx(input_.shape());
    pointwise_conv1x1_backward(input_, weight_.value, dy, &dx, weight_.grad);
    return dx;
  }
  void collect(std::vector<Parameter<T>*>& p) override { p.push_back(&weight_); }
  void init(Rng& rng) override { detail::kaiming_uniform(weight_.value, weight_.value.dim(1), rng); }

  Parameter<T>& weight() { return weight_; }

 private:
  Parameter<T> weight_;
  BasicTensor<T> input_;
};

template <typename T>
class BatchNorm final : public Layer<T> {
 public:
  BatchNorm(std::string name, std::size_t channels, double momentum, double eps)
      : name_(name),
        momentum_(momentum),
        eps_(eps),
        gamma_(name + ".gamma", {channels}),
        beta_(name + ".beta", {channels}),
        running_mean_({channels}, T{0}),
        running_var_({channels}, T{1}) {
    gamma_.value.fill(T{1});
  }

  BasicTensor<T> forward(const BasicTensor<T>& x, Mode mode) override {
    mode_ = mode;
    if (mode == Mode::Eval) return infer(x);
    return BatchNormKernel<T>::train(x, gamma_.value, beta_.value, running_mean_, running_var_,
                                     momentum_, eps_, xhat_, cache_);
  }
  BasicTensor<T> infer(const BasicTensor<T>& x) const override {
    return BatchNormKernel<T>::eval(x, gamma_.value, beta_.value, running_mean_, running_var_, eps_);
  }
  BasicTensor<T> backward(const BasicTensor<T>& dy) override {
    if (mode_ == Mode::Train) {
      return BatchNormKernel<T>::backward(xhat_, gamma_.value, cache_, dy, gamma_.grad, beta_.grad);
    }
    throw std::logic_error("batch_norm backward after an eval-mode forward");
  }
  void collect(std::vector<Parameter<T>*>& p) override {
    p.push_back(&gamma_);
    p.push_back(&beta_);
  }
  void collect_buffers(std::vector<NamedBuffer<T>>& b) override {
    b.push_back({name_ + ".running_mean", &running_mean_});
    b.push_back({name_ + ".running_var", &running_var_});
  }

  Parameter<T>& gamma() { return gamma_; }
  Parameter<T>& beta() { return beta_; }
  BasicTensor<T>& running_mean() { return running_mean_; }
  BasicTensor<T>& running_var() { return running_var_; }

 private:
  std::string name_;
  double momentum_;
  double eps_;
  Parameter<T> gamma_;
  Parameter<T> beta_;
  BasicTensor<T> running_mean_;
  BasicTensor<T> running_var_;
  Mode mode_ = Mode::Train;
  BasicTensor<T> xhat_;
  BatchNormCache cache_;
};

template <typename T>
class ReLU6 final : public Layer<T> {
 public:
  BasicTensor<T> forward(const BasicTensor<T>& x, Mode mode) override {
    if (mode == Mode::FrozenGates) return relu6_on_piece(input_, x);
    input_ = x;
    return relu6(x);
  }
  BasicTensor<T> infer(const BasicTensor<T>& x) const override { return relu6(x); }
  BasicTensor<T> backward(const BasicTensor<T>& dy) override { return relu6_backward(input_, dy); }

 private:
  BasicTensor<T> input_;
};

template <typename T>
class GlobalAvgPool final : public Layer<T> {
 public:
  BasicTensor<T> forward(const BasicTensor<T>& x, Mode) override {
    input_shape_ = x.shape();
    return global_avg_pool(x);
  }
  BasicTensor<T> infer(const BasicTensor<T>& x) const override { return global_avg_pool(x); }
  BasicTensor<T> backward(const BasicTensor<T>& dy) override {
    return global_avg_pool_backward(input_shape_, dy);
  }

 private:
  Shape input_shape_;
};

template <typename T>
class Linear final : public Layer<T> {
 public:
  Linear(std::string name, std::size_t in, std::size_t out)
      : weight_(name + ".weight", {out, in}), bias_(name + ".bias", {out}) {}

  BasicTensor<T> forward(const BasicTensor<T>& x, Mode) override {
    input_ = x;
    return linear(x, weight_.value, bias_.value);
  }
  BasicTensor<T> infer(const BasicTensor<T>& x) const override {
    return linear(x, weight_.value, bias_.value);
  }
  BasicTensor<T> backward(const BasicTensor<T>& dy) override {
    BasicTensor<T> dx(input_.shape());
    linear_backward(input_, weight_.value, dy, &dx, weight_.grad, bias_.grad);
    return dx;
  }
  void collect(std::vector<Parameter<T>*>& p) override {
    p.push_back(&weight_);
    p.push_back(&bias_);
  }
  void init(Rng& rng) override {
    detail::kaiming_uniform(weight_.value, weight_.value.dim(1), rng);
    bias_.value.fill(T{0});
  }

 private:
  Parameter<T> weight_;
  Parameter<T> bias_;
  BasicTensor<T> input_;
};

template <typename T>
class Sequential : public Layer<T> {
 public:
  template <typename L, typename... Args>
  L& add(Args&&... args) {
    auto layer = std::make_unique<L>(std::forward<Args>(args)...);
    L& ref = *layer;
    layers_.push_back(std::move(layer));
    return ref;
  }

  BasicTensor<T> forward(const BasicTensor<T>& x, Mode mode) override {
    BasicTensor<T> h = x;
    for (auto& l : layers_) h = l->forward(h, mode);
    return h;
  }
  BasicTensor<T> infer(const BasicTensor<T>& x) const override {
    BasicTensor<T> h = x;
    for (const auto& l : layers_) h = l->infer(h);
    return h;
  }
  BasicTensor<T> backward(const BasicTensor<T>& dy) override {
    BasicTensor<T> g = dy;
    for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) g = (*it)->backward(g);
    return g;
  }
  void collect(std::vector<Parameter<T>*>& p) override {
    for (auto& l : layers_) l->collect(p);
  }
  void collect_buffers(std::vector<NamedBuffer<T>>& b) override {
    for (auto& l : layers_) l->collect_buffers(b);
  }
  void init(Rng& rng) override {
    for (auto& l : layers_) l->init(rng);
  }

 private:
  std::vector<std::unique_ptr<Layer<T>>> layers_;
};

// Expand (1x1) -> BN -> ReLU6 -> depthwise 3x3 -> BN -> ReLU6 -> project (1x1)
// -> BN, with no activation after the projection. The input is added back when
// stride is 1 and the channel count is unchanged.
template <typename T>
class InvertedResidual final : public Layer<T> {
 public:
  InvertedResidual(const std::string& name, std::size_t in, std::size_t out, int stride,
                   std::size_t expansion, double bn_momentum, double bn_eps)
      : residual_(stride == 1 && in == out) {
    const std::size_t hidden = in * expansion;
    if (expansion != 1) {
      body_.template add<PointwiseConv1x1<T>>(name + ".expand", in, hidden);
      body_.template add<BatchNorm<T>>(name + ".expand_bn", hidden, bn_momentum, bn_eps);
      body_.template add<ReLU6<T>>();
    }
    body_.template add<DepthwiseConv3x3<T>>(name + ".depthwise", hidden, stride);
    body_.template add<BatchNorm<T>>(name + ".depthwise_bn", hidden, bn_momentum, bn_eps);
    body_.template add<ReLU6<T>>();
    project_ = &body_.template add<PointwiseConv1x1<T>>(name + ".project", hidden, out);
    project_bn_ = &body_.template add<BatchNorm<T>>(name + ".project_bn", out, bn_momentum, bn_eps);
  }

  bool residual() const { return residual_; }
  PointwiseConv1x1<T>& projection() { return *project_; }
  BatchNorm<T>& projection_bn() { return *project_bn_; }

  BasicTensor<T> forward(const BasicTensor<T>& x, Mode mode) override {
    BasicTensor<T> y = body_.forward(x, mode);
    if (residual_) add_into(y, x);
    return y;
  }
  BasicTensor<T> infer(const BasicTensor<T>& x) const override {
    BasicTensor<T> y = body_.infer(x);
    if (residual_) add_into(y, x);
    return y;
  }
  BasicTensor<T> backward(const BasicTensor<T>& dy) override {
    BasicTensor<T> dx = body_.backward(dy);
    if (residual_) add_into(dx, dy);
    return dx;
  }
  void collect(std::vector<Parameter<T>*>& p) override { body_.collect(p); }
  void collect_buffers(std::vector<NamedBuffer<T>>& b) override { body_.collect_buffers(b); }
  void init(Rng& rng) override { body_.init(rng); }

 private:
  static void add_into(BasicTensor<T>& acc, const BasicTensor<T>& x) {
    require_shape(x.shape(), acc.shape(), "residual connection");
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += x[i];
  }

  bool residual_;
  Sequential<T> body_;
  PointwiseConv1x1<T>* project_ = nullptr;
  BatchNorm<T>* project_bn_ = nullptr;
};

}  // namespace renderwait::nn
