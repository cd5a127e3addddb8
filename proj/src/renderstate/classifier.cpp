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
#include "renderwait/renderstate/classifier.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "renderwait/common/random.hpp"
#include "renderwait/nn/checkpoint.hpp"

namespace renderwait {

RenderState decide(double confidence) { return RenderState::predicted(confidence >= kDecisionThreshold); }

std::vector<float> preprocess(const imaging::Frame& frame, const nn::NetConfig& config) {
  imaging::Frame src = frame;
  if (config.input_channels == 1) {
    src = imaging::to_luminance(frame);
  } else if (frame.channels() == 1) {
    imaging::Frame rgb(frame.width(), frame.height(), 3, frame.timestamp_ms());
    for (std::size_t i = 0; i < frame.pixels().size(); ++i) {
      for (int c = 0; c < 3; ++c) rgb.pixels()[3 * i + static_cast<std::size_t>(c)] = frame.pixels()[i];
    }
    src = std::move(rgb);
  }
  const imaging::Frame resized = imaging::resize_bilinear(
      src, static_cast<int>(config.input_width), static_cast<int>(config.input_height));
  const std::size_t plane = config.input_width * config.input_height;
  const std::size_t ch = config.input_channels;
  std::vector<float> out(plane * ch);
  const auto px = resized.pixels();
  for (std::size_t p = 0; p < plane; ++p) {
    for (std::size_t c = 0; c < ch; ++c) out[c * plane + p] = static_cast<float>(px[p * ch + c]) / 255.0f;
  }
  return out;
}

namespace {

nn::Tensor batch_tensor(const nn::NetConfig& cfg, std::span<const std::vector<float>* const> images) {
  const std::size_t per = cfg.input_channels * cfg.input_height * cfg.input_width;
  nn::Tensor x({images.size(), cfg.input_channels, cfg.input_height, cfg.input_width});
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i]->size() != per) throw std::invalid_argument("sample does not match the model input size");
    std::copy(images[i]->begin(), images[i]->end(), x.raw() + i * per);
  }
  return x;
}

}  // namespace

Classifier Classifier::load(const std::filesystem::path& checkpoint) {
  return Classifier(nn::read_checkpoint(checkpoint));
}

Prediction Classifier::predict(const imaging::Frame& frame) const {
  const imaging::Frame* one[] = {&frame};
  return predict_batch(one).front();
}

std::vector<Prediction> Classifier::predict_batch(std::span<const imaging::Frame* const> frames) const {
  const nn::NetConfig& cfg = net_.config();
  std::vector<std::vector<float>> images;
  images.reserve(frames.size());
  for (const imaging::Frame* f : frames) images.push_back(preprocess(*f, cfg));
  std::vector<const std::vector<float>*> ptrs;
  for (const auto& im : images) ptrs.push_back(&im);
  const nn::Tensor logits = net_.infer(batch_tensor(cfg, ptrs));
  std::vector<Prediction> out;
  out.reserve(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const double conf = nn::sigmoid(logits[i]);
    out.push_back({decide(conf), conf});
  }
  return out;
}

std::vector<Sample> make_samples(std::span<const LabeledFrame* const> items, const nn::NetConfig& config) {
  std::vector<Sample> out;
  out.reserve(items.size());
  for (const LabeledFrame* item : items) {
    out.push_back({preprocess(item->frame, config),
                   item->label == RenderLabel::FullyRendered ? 1.0f : 0.0f});
  }
  return out;
}

double evaluate_loss(const nn::Network& net, const std::vector<Sample>& samples) {
  if (samples.empty()) return 0.0;
  constexpr std::size_t kChunk = 64;
  double total = 0.0;
  for (std::size_t start = 0; start < samples.size(); start += kChunk) {
    const std::size_t end = std::min(samples.size(), start + kChunk);
    std::vector<const std::vector<float>*> ptrs;
    nn::Tensor targets({end - start, 1});
    for (std::size_t i = start; i < end; ++i) {
      ptrs.push_back(&samples[i].image);
      targets[i - start] = samples[i].target;
    }
    const nn::Tensor logits = net.infer(batch_tensor(net.config(), ptrs));
    total += nn::bce_with_logits(logits, targets) * static_cast<double>(end - start);
  }
  return total / static_cast<double>(samples.size());
}

TrainResult train_classifier(const std::vector<Sample>& train, const std::vector<Sample>& val,
                             const TrainOptions& options) {
  const auto positives = std::count_if(train.begin(), train.end(), [](const Sample& s) { return s.target == 1.0f; });
  if (positives == 0 || static_cast<std::size_t>(positives) == train.size()) {
    throw std::invalid_argument("training set must contain both fully rendered and partial frames");
  }
  if (options.epochs <= 0 || options.batch_size < 2) {
    throw std::invalid_argument("training needs at least one epoch and batches of two or more");
  }
  nn::Network net(options.net);
  net.init(mix_seed(options.seed, 1));
  nn::Adam<float> adam(net.parameters());
  Rng rng(mix_seed(options.seed, 2));

  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  TrainResult result{nn::Network(options.net), 0, {}};
  std::string best_bytes;
  double best_loss = std::numeric_limits<double>::infinity();
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    const double lr = options.schedule.rate(epoch);
    rng.shuffle(order);
    double loss_sum = 0.0;
    std::size_t seen = 0;
    for (std::size_t start = 0; start + 2 <= order.size(); start += options.batch_size) {
      const std::size_t end = std::min(order.size(), start + options.batch_size);
      if (end - start < 2) break;
      std::vector<const std::vector<float>*> ptrs;
      nn::Tensor targets({end - start, 1});
      for (std::size_t i = start; i < end; ++i) {
        ptrs.push_back(&train[order[i]].image);
        targets[i - start] = train[order[i]].target;
      }
      net.zero_grad();
      const nn::Tensor logits = net.forward(batch_tensor(options.net, ptrs), nn::Mode::Train);
      nn::Tensor dlogits;
      const double loss = nn::bce_with_logits(logits, targets, &dlogits);
      net.backward(dlogits);
      adam.step(lr);
      loss_sum += loss * static_cast<double>(end - start);
      seen += end - start;
    }
    EpochLog log{epoch, lr, seen ? loss_sum / static_cast<double>(seen) : 0.0, 0.0};
    log.val_loss = val.empty() ? evaluate_loss(net, train) : evaluate_loss(net, val);
    result.history.push_back(log);
    if (options.on_epoch) options.on_epoch(log);
    if (log.val_loss < best_loss || best_bytes.empty()) {
      best_loss = log.val_loss;
      result.best_epoch = epoch;
      best_bytes = nn::save_checkpoint(net);
    }
  }
  result.best = nn::load_checkpoint(best_bytes);
  return result;
}

TrainResult train_classifier(const Dataset& dataset, const TrainOptions& options) {
  const auto train_items = dataset.select(Split::Train);
  const auto val_items = dataset.select(Split::Val);
  return train_classifier(make_samples(train_items, options.net), make_samples(val_items, options.net),
                          options);
}

Metrics evaluate(const Classifier& classifier, std::span<const LabeledFrame* const> items) {
  Confusion c;
  constexpr std::size_t kChunk = 64;
  for (std::size_t start = 0; start < items.size(); start += kChunk) {
    const std::size_t end = std::min(items.size(), start + kChunk);
    std::vector<const imaging::Frame*> frames;
    for (std::size_t i = start; i < end; ++i) frames.push_back(&items[i]->frame);
    const auto preds = classifier.predict_batch(frames);
    for (std::size_t i = start; i < end; ++i) {
      c.add(preds[i - start].state.is_fully_rendered(), items[i]->label == RenderLabel::FullyRendered);
    }
  }
  return metrics_from(c);
}

Metrics evaluate(const Classifier& classifier, const Dataset& dataset, Split split) {
  const auto items = dataset.select(split);
  if (items.empty()) throw std::invalid_argument("evaluation split is empty");
  return evaluate(classifier, items);
}

}  // namespace renderwait
