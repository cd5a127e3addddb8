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
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "renderwait/imaging/frame.hpp"
#include "renderwait/nn/network.hpp"
#include "renderwait/renderstate/dataset.hpp"
#include "renderwait/renderstate/metrics.hpp"
#include "renderwait/renderstate/render_state.hpp"

namespace renderwait {

inline constexpr double kDecisionThreshold = 0.5;

struct Prediction {
  RenderState state;
  double confidence = 0.0;  // probability of fully rendered
};

// Confidence at or above the threshold means fully rendered.
RenderState decide(double confidence);

// Luminance (or RGB, per the model's channel count) resized to the model
// input and scaled to [0, 1]; returns a C*H*W buffer.
std::vector<float> preprocess(const imaging::Frame& frame, const nn::NetConfig& config);

// Frozen model. predict() is const and safe to call concurrently.
class Classifier {
 public:
  explicit Classifier(nn::Network net) : net_(std::move(net)) {}
  static Classifier load(const std::filesystem::path& checkpoint);

  Prediction predict(const imaging::Frame& frame) const;
  std::vector<Prediction> predict_batch(std::span<const imaging::Frame* const> frames) const;
  nn::Network& network() { return net_; }
  const nn::Network& network() const { return net_; }

 private:
  nn::Network net_;
};

struct Sample {
  std::vector<float> image;  // C*H*W, preprocessed
  float target = 0.0f;       // 1 = fully rendered
};

std::vector<Sample> make_samples(std::span<const LabeledFrame* const> items, const nn::NetConfig& config);

struct EpochLog {
  int epoch = 0;
  double learning_rate = 0.0;
  double train_loss = 0.0;
  double val_loss = 0.0;
};

struct TrainOptions {
  int epochs = 20;
  std::size_t batch_size = 64;
  std::uint64_t seed = 0;
  nn::NetConfig net;
  nn::LrSchedule schedule;
  std::function<void(const EpochLog&)> on_epoch;
};

struct TrainResult {
  nn::Network best;
  int best_epoch = 0;
  std::vector<EpochLog> history;
};

// Adam + BCE + step-halving schedule; keeps the epoch with the lowest
// validation loss. Throws std::invalid_argument if the training set lacks
// either class.
TrainResult train_classifier(const std::vector<Sample>& train, const std::vector<Sample>& val,
                             const TrainOptions& options);
TrainResult train_classifier(const Dataset& dataset, const TrainOptions& options);

// Mean BCE of the frozen network over samples.
double evaluate_loss(const nn::Network& net, const std::vector<Sample>& samples);

Metrics evaluate(const Classifier& classifier, std::span<const LabeledFrame* const> items);
Metrics evaluate(const Classifier& classifier, const Dataset& dataset, Split split);

}  // namespace renderwait
