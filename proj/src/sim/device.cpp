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
#include "renderwait/sim/device.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "renderwait/augment/augment.hpp"
#include "renderwait/common/hash.hpp"

namespace renderwait::sim {

namespace {

const Widget* resolve(const ScreenSpec& screen, const Selector& sel) {
  if (!sel.id.empty()) {
    if (const Widget* w = screen.find_widget(sel.id)) return w;
  }
  if (sel.text) {
    for (const Widget& w : screen.widgets) {
      if (w.text == *sel.text) return &w;
    }
  }
  return nullptr;
}

std::string describe(const Selector& sel) {
  std::string s = "'" + sel.id + "'";
  if (sel.text) s += " (text '" + *sel.text + "')";
  return s;
}

}  // namespace

Device::Device(const Scenario& scenario, DeviceProfile profile, std::uint64_t seed)
    : scenario_(&scenario), profile_(std::move(profile)), rng_(mix_seed(seed, fnv1a(scenario.name))),
      screen_(scenario.initial_screen) {
  profile_.validate();
  scenario.screen(screen_);
}

void Device::advance(std::int64_t ms) {
  if (ms < 0) throw std::invalid_argument("cannot advance device time backwards");
  now_ += ms;
  settle_if_done();
}

void Device::settle_if_done() {
  if (!nav_ || !nav_->latency) return;
  if (now_ >= nav_->start + *nav_->latency + nav_->transition) nav_.reset();
}

const std::string& Device::current_screen() const { return screen_; }

RenderState Device::ground_truth_state() const {
  if (!nav_) return RenderState::fully_rendered();
  if (!nav_->latency || now_ < nav_->start + *nav_->latency) return RenderState::loading();
  if (now_ < nav_->start + *nav_->latency + nav_->transition) return RenderState::transiting();
  return RenderState::fully_rendered();
}

std::optional<std::int64_t> Device::time_until_settled() const {
  if (!nav_) return 0;
  if (!nav_->latency) return std::nullopt;
  return std::max<std::int64_t>(0, nav_->start + *nav_->latency + nav_->transition - now_);
}

double Device::transition_progress() const {
  const std::int64_t t0 = nav_->start + *nav_->latency;
  return static_cast<double>(now_ - t0) / static_cast<double>(nav_->transition);
}

const InputValues& Device::inputs(const std::string& screen_id) const {
  static const InputValues empty;
  const auto it = inputs_.find(screen_id);
  return it == inputs_.end() ? empty : it->second;
}

const imaging::Frame& Device::steady(const std::string& screen_id) const {
  const InputValues& in = inputs(screen_id);
  std::string key = screen_id;
  for (const auto& [k, v] : in) key += '\x1f' + k + '\x1e' + v;
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    it = cache_.emplace(key, render_screen(scenario_->screen(screen_id), in, profile_.width, profile_.height)).first;
  }
  return it->second;
}

// The loading scrim stays on the outgoing screen while it leaves.
const imaging::Frame& Device::dimmed(const std::string& screen_id) const {
  const imaging::Frame& base = steady(screen_id);
  auto it = scrim_cache_.find(screen_id);
  if (it == scrim_cache_.end() || it->second.first != base.content_hash()) {
    imaging::Frame out = base;
    const double factor = 1.0 - kLoadingShadow * augment::kMaxShadow;
    for (std::uint8_t& p : out.pixels()) p = static_cast<std::uint8_t>(std::lround(p * factor));
    it = scrim_cache_.insert_or_assign(screen_id, std::pair{base.content_hash(), std::move(out)}).first;
  }
  return it->second.second;
}

imaging::Frame Device::screenshot() const {
  imaging::Frame out;
  const RenderState state = ground_truth_state();
  if (state.is_fully_rendered()) {
    out = steady(screen_);
  } else if (state.kind == PartialKind::Loading) {
    augment::SpinnerSpec spinner;
    spinner.radius = std::max(4, static_cast<int>(std::lround(0.09 * profile_.width)));
    spinner.center_x = profile_.width / 2;
    spinner.center_y = profile_.height / 2;
    spinner.shadow_intensity = kLoadingShadow;
    spinner.phase = static_cast<int>((now_ / kSpinnerTickMs) % augment::kSpinnerTicks);
    out = augment::inject_loading(steady(nav_->from), spinner);
  } else {
    const imaging::Frame& from = nav_->scrim ? dimmed(nav_->from) : steady(nav_->from);
    const imaging::Frame& to = steady(nav_->to);
    const double p = transition_progress();
    const TransitionKind kind = scenario_->screen(nav_->to).entry_transition.kind;
    if (kind == TransitionKind::Fade) {
      out = augment::blend(to, from, p);
    } else {
      const int k = static_cast<int>(std::lround((1.0 - p) * profile_.width));
      out = k >= profile_.width ? from : k <= 0 ? to : augment::stitch(from, to, 1.0 - p);
    }
  }
  out.set_timestamp_ms(now_);
  return out;
}

void Device::begin_navigation(const std::string& target) {
  const ScreenSpec& dest = scenario_->screen(target);
  Navigation nav;
  nav.from = screen_;
  nav.to = target;
  nav.start = now_;
  if (const auto ms = dest.network_delay.sample(rng_)) {
    nav.latency = std::llround(std::max(0.0, *ms) * profile_.render_scale);
  }
  nav.scrim = !nav.latency || *nav.latency > 0;
  if (dest.entry_transition.kind != TransitionKind::Instant) {
    nav.transition = std::llround(dest.entry_transition.duration_ms * profile_.render_scale);
  }
  history_.push_back(screen_);
  screen_ = target;
  nav_ = nav;
  settle_if_done();
}

DispatchOutcome Device::dispatch(const Action& action) {
  const RenderState state = ground_truth_state();
  if (!state.is_fully_rendered()) {
    if (state.kind == PartialKind::Loading) {
      return {false, "screen '" + nav_->to + "' is still loading"};
    }
    if (transition_progress() < kLateTapProgress) {
      return {false, "transition to '" + nav_->to + "' is in progress"};
    }
    nav_.reset();
  }

  if (action.type == ActionType::Back) {
    if (history_.empty()) return {false, "no previous screen"};
    screen_ = history_.back();
    history_.pop_back();
    return {};
  }

  const ScreenSpec& screen = scenario_->screen(screen_);
  const Widget* w = resolve(screen, action.selector);
  if (!w) return {false, "no widget " + describe(action.selector) + " on screen '" + screen_ + "'"};

  if (action.type == ActionType::Input) {
    if (w->kind != WidgetKind::Input) return {false, "widget '" + w->id + "' does not accept input"};
    inputs_[screen_][w->id] = action.payload;
    return {};
  }
  if (w->target) begin_navigation(*w->target);
  return {};
}

Screencast capture_screencast(const Scenario& scenario, const DeviceProfile& profile, std::uint64_t seed,
                              const CaptureOptions& options) {
  if (options.frame_interval_ms <= 0) throw std::invalid_argument("frame interval must be positive");
  Device dev(scenario, profile, seed);
  Screencast cast;
  auto record_for = [&](std::int64_t ms) {
    for (std::int64_t t = 0; t < ms; t += options.frame_interval_ms) {
      cast.frames.push_back(dev.screenshot());
      cast.labels.push_back(dev.ground_truth_state());
      dev.advance(options.frame_interval_ms);
    }
  };
  record_for(options.dwell_ms);
  for (std::size_t i = 0; i < scenario.actions.size(); ++i) {
    if (const DispatchOutcome r = dev.dispatch(scenario.actions[i]); !r) {
      throw std::runtime_error("capture: step " + std::to_string(i) + " failed: " + r.reason);
    }
    const auto wait = dev.time_until_settled();
    if (!wait) throw std::runtime_error("capture: step " + std::to_string(i) + " never settles");
    record_for(*wait);
    record_for(options.dwell_ms);
  }
  return cast;
}

std::vector<Screencast> capture_suite(const std::vector<Scenario>& scenarios, const std::vector<std::string>& profiles,
                                      std::uint64_t seed, const CaptureOptions& options) {
  std::vector<Screencast> casts;
  std::uint64_t stream = 0;
  for (const Scenario& sc : scenarios) {
    std::vector<DeviceProfile> chosen;
    if (profiles.empty()) {
      chosen = sc.effective_profiles();
    } else {
      for (const std::string& name : profiles) chosen.push_back(sc.profile(name));
    }
    for (const DeviceProfile& p : chosen) casts.push_back(capture_screencast(sc, p, mix_seed(seed, stream++), options));
  }
  return casts;
}

}  // namespace renderwait::sim
