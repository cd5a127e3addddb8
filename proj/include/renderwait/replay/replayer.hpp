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
#include <functional>
#include <string>
#include <vector>

#include "renderwait/imaging/frame.hpp"
#include "renderwait/replay/script.hpp"
#include "renderwait/sim/scenario.hpp"

namespace renderwait::replay {

inline constexpr std::int64_t kDefaultPollIntervalMs = 100;
inline constexpr std::int64_t kDefaultMaxWaitMs = 60000;

enum class StrategyKind { FixedWait, AdaptiveRender, Oracle };

struct WaitStrategy {
  StrategyKind kind = StrategyKind::FixedWait;
  double multiplier = 1.0;  // FixedWait
  std::int64_t poll_interval_ms = kDefaultPollIntervalMs;
  std::int64_t max_wait_ms = kDefaultMaxWaitMs;

  static WaitStrategy fixed(double k) { return {StrategyKind::FixedWait, k}; }
  static WaitStrategy adaptive(std::int64_t poll = kDefaultPollIntervalMs, std::int64_t max_wait = kDefaultMaxWaitMs) {
    return {StrategyKind::AdaptiveRender, 1.0, poll, max_wait};
  }
  static WaitStrategy oracle() { return {StrategyKind::Oracle}; }

  // "fixed:<k>", "adaptive", "oracle".
  std::string label() const;
  void validate() const;
};

// Accepts the labels produced by WaitStrategy::label(). Throws std::invalid_argument.
WaitStrategy parse_strategy(const std::string& text);

// True when a screenshot looks fully rendered.
using RenderPredictor = std::function<bool(const imaging::Frame&)>;

struct EventWait {
  std::int64_t wait_ms = 0;
  int polls = 0;          // AdaptiveRender screenshots taken
  bool fallback = false;  // dispatched because max_wait was reached
  bool dispatched_ok = false;
};

struct ReplayReport {
  std::string scenario;
  std::string profile;
  std::string strategy;
  bool reproduced = false;
  std::int64_t elapsed_ms = 0;  // virtual time from replay start to terminal verification
  std::vector<EventWait> events;
  std::string failure;  // empty when reproduced
};

struct ReplayOptions {
  std::uint64_t seed = 0;
  RenderPredictor predictor;  // required for AdaptiveRender
};

// Never throws on dispatch failure; the report carries the outcome.
ReplayReport replay(const sim::Scenario& scenario, const EventScript& script, const sim::DeviceProfile& profile,
                    const WaitStrategy& strategy, const ReplayOptions& options);

}  // namespace renderwait::replay
