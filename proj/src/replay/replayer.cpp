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
#include "renderwait/replay/replayer.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "renderwait/sim/device.hpp"

namespace renderwait::replay {

std::string WaitStrategy::label() const {
  switch (kind) {
    case StrategyKind::AdaptiveRender:
      return "adaptive";
    case StrategyKind::Oracle:
      return "oracle";
    case StrategyKind::FixedWait:
      break;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fixed:%g", multiplier);
  return buf;
}

void WaitStrategy::validate() const {
  if (kind == StrategyKind::FixedWait && !(multiplier >= 0.0 && std::isfinite(multiplier))) {
    throw std::invalid_argument("fixed-wait multiplier must be a non-negative number");
  }
  if (poll_interval_ms <= 0) throw std::invalid_argument("poll interval must be positive");
  if (max_wait_ms <= 0) throw std::invalid_argument("max wait must be positive");
}

WaitStrategy parse_strategy(const std::string& text) {
  if (text == "adaptive") return WaitStrategy::adaptive();
  if (text == "oracle") return WaitStrategy::oracle();
  if (text.rfind("fixed:", 0) == 0) {
    const std::string num = text.substr(6);
    std::size_t used = 0;
    double k = 0.0;
    try {
      k = std::stod(num, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != num.size()) throw std::invalid_argument("bad fixed-wait multiplier '" + num + "'");
    WaitStrategy s = WaitStrategy::fixed(k);
    s.validate();
    return s;
  }
  throw std::invalid_argument("unknown strategy '" + text + "' (expected adaptive, oracle or fixed:<k>)");
}

namespace {

EventWait wait_fixed(sim::Device& dev, const ScriptEvent& ev, double k) {
  EventWait w;
  w.wait_ms = std::llround(k * static_cast<double>(ev.recorded_delay_ms));
  dev.advance(w.wait_ms);
  return w;
}

EventWait wait_oracle(sim::Device& dev, std::int64_t max_wait) {
  EventWait w;
  const auto settle = dev.time_until_settled();
  if (settle && *settle < max_wait) {
    w.wait_ms = *settle;
  } else {
    w.wait_ms = max_wait;
    w.fallback = true;
  }
  dev.advance(w.wait_ms);
  return w;
}

EventWait wait_adaptive(sim::Device& dev, const WaitStrategy& s, const RenderPredictor& predict, bool first_event) {
  EventWait w;
  if (!first_event) {
    dev.advance(s.poll_interval_ms);
    w.wait_ms = s.poll_interval_ms;
  }
  while (true) {
    if (w.wait_ms >= s.max_wait_ms) {
      w.fallback = true;
      return w;
    }
    ++w.polls;
    if (predict(dev.screenshot())) return w;
    const std::int64_t step = std::min(s.poll_interval_ms, s.max_wait_ms - w.wait_ms);
    dev.advance(step);
    w.wait_ms += step;
  }
}

}  // namespace

ReplayReport replay(const sim::Scenario& scenario, const EventScript& script, const sim::DeviceProfile& profile,
                    const WaitStrategy& strategy, const ReplayOptions& options) {
  strategy.validate();
  script.validate();
  if (strategy.kind == StrategyKind::AdaptiveRender && !options.predictor) {
    throw std::invalid_argument("adaptive replay needs a render-state predictor");
  }
  ReplayReport report;
  report.scenario = script.scenario;
  report.profile = profile.name;
  report.strategy = strategy.label();

  sim::Device dev(scenario, profile, options.seed);
  bool ok = true;
  for (std::size_t i = 0; i < script.events.size(); ++i) {
    const ScriptEvent& ev = script.events[i];
    EventWait w;
    switch (strategy.kind) {
      case StrategyKind::FixedWait:
        w = wait_fixed(dev, ev, strategy.multiplier);
        break;
      case StrategyKind::Oracle:
        w = wait_oracle(dev, strategy.max_wait_ms);
        break;
      case StrategyKind::AdaptiveRender:
        w = wait_adaptive(dev, strategy, options.predictor, i == 0);
        break;
    }
    const sim::DispatchOutcome r = dev.dispatch(ev.action);
    w.dispatched_ok = r.ok;
    report.events.push_back(w);
    if (!r) {
      ok = false;
      report.failure = "event " + std::to_string(i) + ": " + r.reason;
      break;
    }
  }

  if (ok) {
    // Terminal check only: let the final screen settle, bounded by max_wait.
    const auto settle = dev.time_until_settled();
    dev.advance(settle && *settle <= strategy.max_wait_ms ? *settle : strategy.max_wait_ms);
    if (!dev.settled()) {
      report.failure = "terminal screen never finished rendering";
    } else if (!script.expected_terminal.empty() && dev.current_screen() != script.expected_terminal) {
      report.failure = "ended on '" + dev.current_screen() + "', expected '" + script.expected_terminal + "'";
    } else {
      report.reproduced = true;
    }
  }
  report.elapsed_ms = dev.now_ms();
  return report;
}

}  // namespace renderwait::replay
