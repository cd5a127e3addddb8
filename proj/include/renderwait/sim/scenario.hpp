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
#include <optional>
#include <string>
#include <vector>

#include "renderwait/common/random.hpp"

namespace renderwait::sim {

// Layout coordinates live on a 140 x 240 logical canvas, scaled to the
// device resolution at render time.
inline constexpr int kCanvasWidth = 140;
inline constexpr int kCanvasHeight = 240;
inline constexpr int kHeaderHeight = 28;

struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
  friend bool operator==(const Rect&, const Rect&) = default;
};

enum class WidgetKind { Button, Text, Image, Input };

struct Widget {
  std::string id;
  Rect rect;
  WidgetKind kind = WidgetKind::Button;
  int fill = 200;
  std::string text;              // visible label, also a selector fallback
  std::uint64_t text_pattern = 0;  // seeds the glyph raster
  std::optional<std::string> target;  // buttons: screen to open
};

enum class TransitionKind { Instant, Slide, Fade };

struct Transition {
  TransitionKind kind = TransitionKind::Instant;
  int duration_ms = 0;
};

enum class LatencyKind { Fixed, Uniform, LogNormal, Never };

struct LatencyModel {
  LatencyKind kind = LatencyKind::Fixed;
  double a = 0.0;  // fixed: ms; uniform: lo; lognormal: mu (of ln ms)
  double b = 0.0;  // uniform: hi; lognormal: sigma

  static LatencyModel fixed(double ms) { return {LatencyKind::Fixed, ms, 0.0}; }
  static LatencyModel never() { return {LatencyKind::Never, 0.0, 0.0}; }

  // Always consumes exactly two draws so later samples do not depend on the
  // model kind. Returns nullopt for Never.
  std::optional<double> sample(Rng& rng) const;
};

struct ScreenSpec {
  std::string id;
  std::string title;
  int background = 245;
  int header = 90;
  std::vector<Widget> widgets;
  Transition entry_transition;
  LatencyModel network_delay;

  const Widget* find_widget(const std::string& id) const;
};

struct DeviceProfile {
  std::string name;
  int width = kCanvasWidth;
  int height = kCanvasHeight;
  double render_scale = 1.0;  // multiplies every transition/network duration

  void validate() const;
};

// Four built-in devices: flagship, midrange, budget, legacy.
const std::vector<DeviceProfile>& builtin_profiles();
std::optional<DeviceProfile> find_builtin_profile(const std::string& name);

enum class ActionType { Tap, Input, Back };

struct Selector {
  std::string id;
  std::optional<std::string> text;
  friend bool operator==(const Selector&, const Selector&) = default;
};

struct Action {
  Selector selector;
  ActionType type = ActionType::Tap;
  std::string payload;  // Input text
  friend bool operator==(const Action&, const Action&) = default;
};

struct Scenario {
  std::string name;
  std::vector<std::string> tags;
  std::vector<ScreenSpec> screens;
  std::string initial_screen;
  std::string expected_terminal;
  std::vector<Action> actions;
  std::vector<DeviceProfile> profiles;  // empty: all built-in profiles

  const ScreenSpec& screen(const std::string& id) const;
  const ScreenSpec* find_screen(const std::string& id) const;
  bool has_tag(const std::string& tag) const;
  DeviceProfile profile(const std::string& name) const;
  std::vector<DeviceProfile> effective_profiles() const;

  // Structural checks plus the requirement that any two screens differ in at
  // least 1% of canvas pixels. Throws std::invalid_argument.
  void validate() const;
};

Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::filesystem::path& path);
std::string scenario_to_json(const Scenario& scenario);

std::string_view to_string(ActionType t);
std::optional<ActionType> parse_action_type(std::string_view s);

}  // namespace renderwait::sim
