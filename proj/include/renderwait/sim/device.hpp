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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "renderwait/common/random.hpp"
#include "renderwait/imaging/frame.hpp"
#include "renderwait/renderstate/render_state.hpp"
#include "renderwait/renderstate/screencast.hpp"
#include "renderwait/sim/raster.hpp"
#include "renderwait/sim/scenario.hpp"

namespace renderwait::sim {

// Spinner frame period while a screen is loading.
inline constexpr std::int64_t kSpinnerTickMs = 80;
// A transition this far along accepts input on the incoming screen.
inline constexpr double kLateTapProgress = 0.95;
inline constexpr double kLoadingShadow = 0.5;

struct DispatchOutcome {
  bool ok = true;
  std::string reason;
  explicit operator bool() const { return ok; }
};

// Deterministic virtual device: time only moves through advance().
class Device {
 public:
  Device(const Scenario& scenario, DeviceProfile profile, std::uint64_t seed);

  std::int64_t now_ms() const { return now_; }
  void advance(std::int64_t ms);

  const DeviceProfile& profile() const { return profile_; }
  const Scenario& scenario() const { return *scenario_; }

  // Screen that is shown once the device settles.
  const std::string& current_screen() const;
  RenderState ground_truth_state() const;
  bool settled() const { return ground_truth_state().is_fully_rendered(); }
  // Milliseconds until the device is fully rendered; nullopt if it never will be.
  std::optional<std::int64_t> time_until_settled() const;

  // 1-channel frame at the profile resolution, stamped with now_ms().
  imaging::Frame screenshot() const;

  DispatchOutcome dispatch(const Action& action);

  const InputValues& inputs(const std::string& screen_id) const;

 private:
  struct Navigation {
    std::string from;
    std::string to;
    std::int64_t start = 0;
    std::optional<std::int64_t> latency;  // nullopt: never finishes loading
    std::int64_t transition = 0;
    bool scrim = false;  // a loading phase dimmed the outgoing screen
  };

  const imaging::Frame& steady(const std::string& screen_id) const;
  const imaging::Frame& dimmed(const std::string& screen_id) const;
  void settle_if_done();
  void begin_navigation(const std::string& target);
  double transition_progress() const;

  const Scenario* scenario_;
  DeviceProfile profile_;
  Rng rng_;
  std::int64_t now_ = 0;
  std::string screen_;
  std::vector<std::string> history_;
  std::optional<Navigation> nav_;
  std::map<std::string, InputValues> inputs_;
  mutable std::map<std::string, imaging::Frame> cache_;
  mutable std::map<std::string, std::pair<std::uint64_t, imaging::Frame>> scrim_cache_;
};

struct CaptureOptions {
  std::int64_t frame_interval_ms = 50;
  // Extra fully rendered time recorded after each step settles.
  std::int64_t dwell_ms = 800;
};

// Runs the scenario's actions with exact waits and records every frame with its
// ground-truth state. Throws std::runtime_error if a step never settles or a
// dispatch fails.
Screencast capture_screencast(const Scenario& scenario, const DeviceProfile& profile, std::uint64_t seed,
                              const CaptureOptions& options = {});

// One screencast per (scenario, profile) pair, each with its own derived seed.
// An empty profile list means every scenario's effective profiles.
std::vector<Screencast> capture_suite(const std::vector<Scenario>& scenarios, const std::vector<std::string>& profiles,
                                      std::uint64_t seed, const CaptureOptions& options = {});

}  // namespace renderwait::sim
