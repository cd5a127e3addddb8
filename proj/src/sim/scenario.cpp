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
#include "renderwait/sim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "renderwait/common/error.hpp"
#include "renderwait/sim/raster.hpp"

namespace renderwait::sim {

using nlohmann::json;

std::optional<double> LatencyModel::sample(Rng& rng) const {
  double u1 = rng.uniform01();
  const double u2 = rng.uniform01();
  switch (kind) {
    case LatencyKind::Fixed:
      return a;
    case LatencyKind::Uniform:
      return a + (b - a) * u1;
    case LatencyKind::LogNormal: {
      if (u1 <= 0.0) u1 = 0x1.0p-53;
      const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
      return std::exp(a + b * z);
    }
    case LatencyKind::Never:
      return std::nullopt;
  }
  return a;
}

const Widget* ScreenSpec::find_widget(const std::string& wid) const {
  for (const Widget& w : widgets) {
    if (w.id == wid) return &w;
  }
  return nullptr;
}

void DeviceProfile::validate() const {
  if (name.empty()) throw std::invalid_argument("device profile needs a name");
  if (width < 32 || height < 32) throw std::invalid_argument("device resolution is too small: " + name);
  if (!(render_scale >= 1.0)) throw std::invalid_argument("render_scale must be >= 1: " + name);
}

const std::vector<DeviceProfile>& builtin_profiles() {
  static const std::vector<DeviceProfile> profiles{
      {"flagship", 210, 360, 1.0},
      {"midrange", 168, 288, 1.3},
      {"budget", 140, 240, 1.6},
      {"legacy", 112, 192, 2.0},
  };
  return profiles;
}

std::optional<DeviceProfile> find_builtin_profile(const std::string& name) {
  for (const DeviceProfile& p : builtin_profiles()) {
    if (p.name == name) return p;
  }
  return std::nullopt;
}

const ScreenSpec* Scenario::find_screen(const std::string& id) const {
  for (const ScreenSpec& s : screens) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

const ScreenSpec& Scenario::screen(const std::string& id) const {
  const ScreenSpec* s = find_screen(id);
  if (!s) throw std::invalid_argument("scenario '" + name + "' has no screen '" + id + "'");
  return *s;
}

bool Scenario::has_tag(const std::string& tag) const {
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

DeviceProfile Scenario::profile(const std::string& pname) const {
  for (const DeviceProfile& p : profiles) {
    if (p.name == pname) return p;
  }
  if (auto p = find_builtin_profile(pname)) return *p;
  throw std::invalid_argument("unknown device profile '" + pname + "'");
}

std::vector<DeviceProfile> Scenario::effective_profiles() const {
  return profiles.empty() ? builtin_profiles() : profiles;
}

void Scenario::validate() const {
  if (name.empty()) throw std::invalid_argument("scenario needs a name");
  if (screens.empty()) throw std::invalid_argument("scenario '" + name + "' has no screens");
  std::set<std::string> ids;
  for (const ScreenSpec& s : screens) {
    if (!ids.insert(s.id).second) throw std::invalid_argument("duplicate screen id '" + s.id + "'");
    std::set<std::string> wids;
    for (const Widget& w : s.widgets) {
      if (w.id.empty() || !wids.insert(w.id).second) {
        throw std::invalid_argument("screen '" + s.id + "' has an empty or duplicate widget id '" + w.id + "'");
      }
      const Rect& r = w.rect;
      if (r.w <= 0 || r.h <= 0 || r.x < 0 || r.y < 0 || r.x + r.w > kCanvasWidth || r.y + r.h > kCanvasHeight) {
        throw std::invalid_argument("widget '" + w.id + "' lies outside the screen bounds");
      }
      if (w.fill < 0 || w.fill > 255) throw std::invalid_argument("widget '" + w.id + "' fill out of range");
    }
    if (s.entry_transition.duration_ms < 0) throw std::invalid_argument("negative transition duration");
    if (s.entry_transition.kind != TransitionKind::Instant && s.entry_transition.duration_ms == 0) {
      throw std::invalid_argument("screen '" + s.id + "' has a zero-length animated transition");
    }
    const LatencyModel& l = s.network_delay;
    if ((l.kind == LatencyKind::Fixed && l.a < 0) || (l.kind == LatencyKind::Uniform && !(0 <= l.a && l.a <= l.b)) ||
        (l.kind == LatencyKind::LogNormal && !(l.b >= 0))) {
      throw std::invalid_argument("screen '" + s.id + "' has an invalid latency model");
    }
  }
  for (const ScreenSpec& s : screens) {
    for (const Widget& w : s.widgets) {
      if (w.target && !find_screen(*w.target)) {
        throw std::invalid_argument("widget '" + w.id + "' targets unknown screen '" + *w.target + "'");
      }
    }
  }
  if (!find_screen(initial_screen)) throw std::invalid_argument("unknown initial screen '" + initial_screen + "'");
  if (!expected_terminal.empty() && !find_screen(expected_terminal)) {
    throw std::invalid_argument("unknown expected terminal screen '" + expected_terminal + "'");
  }
  for (const DeviceProfile& p : profiles) p.validate();

  std::vector<imaging::Frame> rasters;
  for (const ScreenSpec& s : screens) rasters.push_back(render_screen(s, {}, kCanvasWidth, kCanvasHeight));
  for (std::size_t i = 0; i < rasters.size(); ++i) {
    for (std::size_t j = i + 1; j < rasters.size(); ++j) {
      if (differing_fraction(rasters[i], rasters[j]) < 0.01) {
        throw std::invalid_argument("screens '" + screens[i].id + "' and '" + screens[j].id +
                                    "' differ in fewer than 1% of pixels");
      }
    }
  }
}

std::string_view to_string(ActionType t) {
  switch (t) {
    case ActionType::Tap: return "tap";
    case ActionType::Input: return "input";
    case ActionType::Back: return "back";
  }
  return "tap";
}

std::optional<ActionType> parse_action_type(std::string_view s) {
  for (ActionType t : {ActionType::Tap, ActionType::Input, ActionType::Back}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

namespace {

const char* kind_name(WidgetKind k) {
  switch (k) {
    case WidgetKind::Button: return "button";
    case WidgetKind::Text: return "text";
    case WidgetKind::Image: return "image";
    case WidgetKind::Input: return "input";
  }
  return "button";
}

WidgetKind parse_widget_kind(const std::string& s) {
  for (WidgetKind k : {WidgetKind::Button, WidgetKind::Text, WidgetKind::Image, WidgetKind::Input}) {
    if (s == kind_name(k)) return k;
  }
  throw FormatError("unknown widget kind '" + s + "'");
}

Transition parse_transition(const json& j) {
  Transition t;
  const std::string type = j.at("type").get<std::string>();
  if (type == "instant") {
    t.kind = TransitionKind::Instant;
  } else if (type == "slide") {
    t.kind = TransitionKind::Slide;
  } else if (type == "fade") {
    t.kind = TransitionKind::Fade;
  } else {
    throw FormatError("unknown transition type '" + type + "'");
  }
  t.duration_ms = j.value("duration_ms", 0);
  return t;
}

json transition_json(const Transition& t) {
  const char* type = t.kind == TransitionKind::Instant ? "instant" : t.kind == TransitionKind::Slide ? "slide" : "fade";
  json j = {{"type", type}};
  if (t.kind != TransitionKind::Instant) j["duration_ms"] = t.duration_ms;
  return j;
}

LatencyModel parse_latency(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "fixed") return {LatencyKind::Fixed, j.at("ms").get<double>(), 0.0};
  if (type == "uniform") return {LatencyKind::Uniform, j.at("lo").get<double>(), j.at("hi").get<double>()};
  if (type == "lognormal") return {LatencyKind::LogNormal, j.at("mu").get<double>(), j.at("sigma").get<double>()};
  if (type == "never") return LatencyModel::never();
  throw FormatError("unknown latency model '" + type + "'");
}

json latency_json(const LatencyModel& l) {
  switch (l.kind) {
    case LatencyKind::Fixed: return {{"type", "fixed"}, {"ms", l.a}};
    case LatencyKind::Uniform: return {{"type", "uniform"}, {"lo", l.a}, {"hi", l.b}};
    case LatencyKind::LogNormal: return {{"type", "lognormal"}, {"mu", l.a}, {"sigma", l.b}};
    case LatencyKind::Never: return {{"type", "never"}};
  }
  return {};
}

Selector parse_selector(const json& j) {
  Selector s;
  s.id = j.value("id", "");
  if (j.contains("text")) s.text = j.at("text").get<std::string>();
  return s;
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
  try {
    const json j = json::parse(json_text);
    Scenario sc;
    sc.name = j.at("name").get<std::string>();
    sc.tags = j.value("tags", std::vector<std::string>{});
    sc.initial_screen = j.at("initial_screen").get<std::string>();
    sc.expected_terminal = j.value("expected_terminal", "");
    for (const json& sj : j.at("screens")) {
      ScreenSpec s;
      s.id = sj.at("id").get<std::string>();
      s.title = sj.value("title", s.id);
      s.background = sj.value("background", 245);
      s.header = sj.value("header", 90);
      if (sj.contains("entry_transition")) s.entry_transition = parse_transition(sj.at("entry_transition"));
      if (sj.contains("network_delay")) s.network_delay = parse_latency(sj.at("network_delay"));
      for (const json& wj : sj.value("widgets", json::array())) {
        Widget w;
        w.id = wj.at("id").get<std::string>();
        const auto r = wj.at("rect").get<std::vector<int>>();
        if (r.size() != 4) throw FormatError("widget rect must be [x, y, w, h]");
        w.rect = {r[0], r[1], r[2], r[3]};
        w.kind = parse_widget_kind(wj.value("kind", "button"));
        w.fill = wj.value("fill", 200);
        w.text = wj.value("text", "");
        w.text_pattern = wj.value("text_pattern", std::uint64_t{0});
        if (wj.contains("target") && !wj.at("target").is_null()) w.target = wj.at("target").get<std::string>();
        s.widgets.push_back(std::move(w));
      }
      sc.screens.push_back(std::move(s));
    }
    for (const json& aj : j.value("actions", json::array())) {
      Action a;
      a.selector = parse_selector(aj.value("selector", json::object()));
      const auto type = parse_action_type(aj.at("action").at("type").get<std::string>());
      if (!type) throw FormatError("unknown action type");
      a.type = *type;
      a.payload = aj.at("action").value("payload", "");
      sc.actions.push_back(std::move(a));
    }
    for (const json& pj : j.value("profiles", json::array())) {
      if (pj.is_string()) {
        const auto p = find_builtin_profile(pj.get<std::string>());
        if (!p) throw FormatError("unknown built-in profile '" + pj.get<std::string>() + "'");
        sc.profiles.push_back(*p);
      } else {
        sc.profiles.push_back({pj.at("name").get<std::string>(), pj.at("width").get<int>(),
                               pj.at("height").get<int>(), pj.value("render_scale", 1.0)});
      }
    }
    sc.validate();
    return sc;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed scenario: ") + e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string scenario_to_json(const Scenario& sc) {
  json screens = json::array();
  for (const ScreenSpec& s : sc.screens) {
    json widgets = json::array();
    for (const Widget& w : s.widgets) {
      json wj = {{"id", w.id},     {"rect", {w.rect.x, w.rect.y, w.rect.w, w.rect.h}},
                 {"kind", kind_name(w.kind)}, {"fill", w.fill},
                 {"text", w.text}, {"text_pattern", w.text_pattern}};
      if (w.target) wj["target"] = *w.target;
      widgets.push_back(std::move(wj));
    }
    screens.push_back({{"id", s.id},
                       {"title", s.title},
                       {"background", s.background},
                       {"header", s.header},
                       {"entry_transition", transition_json(s.entry_transition)},
                       {"network_delay", latency_json(s.network_delay)},
                       {"widgets", widgets}});
  }
  json actions = json::array();
  for (const Action& a : sc.actions) {
    json sel = {{"id", a.selector.id}};
    if (a.selector.text) sel["text"] = *a.selector.text;
    json act = {{"type", to_string(a.type)}};
    if (a.type == ActionType::Input) act["payload"] = a.payload;
    actions.push_back({{"selector", sel}, {"action", act}});
  }
  json profiles = json::array();
  for (const DeviceProfile& p : sc.profiles) {
    profiles.push_back({{"name", p.name}, {"width", p.width}, {"height", p.height}, {"render_scale", p.render_scale}});
  }
  const json j = {{"name", sc.name},       {"tags", sc.tags},
                  {"initial_screen", sc.initial_screen}, {"expected_terminal", sc.expected_terminal},
                  {"screens", screens},    {"actions", actions},
                  {"profiles", profiles}};
  return j.dump(2) + "\n";
}

}  // namespace renderwait::sim
