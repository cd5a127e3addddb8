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

#include "renderwait/sim/scenario.hpp"

namespace fixture {

namespace sim = renderwait::sim;

// Two screens: "home" with a button opening "detail", and "detail" with an input.
inline sim::Scenario two_screens(sim::TransitionKind kind, int transition_ms, double latency_ms) {
  sim::Scenario sc;
  sc.name = "fixture";
  sim::ScreenSpec home;
  home.id = "home";
  home.title = "Home";
  home.background = 240;
  sim::Widget open;
  open.id = "open";
  open.text = "OPEN";
  open.rect = {10, 60, 120, 30};
  open.fill = 120;
  open.text_pattern = 3;
  open.target = "detail";
  home.widgets.push_back(open);
  sim::Widget label;
  label.id = "label";
  label.kind = sim::WidgetKind::Text;
  label.text = "HELLO";
  label.rect = {10, 110, 80, 16};
  home.widgets.push_back(label);

  sim::ScreenSpec detail;
  detail.id = "detail";
  detail.title = "Detail";
  detail.background = 60;
  detail.header = 200;
  sim::Widget pic;
  pic.id = "pic";
  pic.kind = sim::WidgetKind::Image;
  pic.rect = {10, 40, 120, 90};
  pic.text_pattern = 9;
  detail.widgets.push_back(pic);
  sim::Widget box;
  box.id = "box";
  box.kind = sim::WidgetKind::Input;
  box.text = "type";
  box.rect = {10, 150, 120, 24};
  detail.widgets.push_back(box);
  detail.entry_transition = {kind, transition_ms};
  detail.network_delay = sim::LatencyModel::fixed(latency_ms);

  sc.screens = {home, detail};
  sc.initial_screen = "home";
  sc.expected_terminal = "detail";
  sim::Action tap;
  tap.selector.id = "open";
  sim::Action type;
  type.selector.id = "box";
  type.type = sim::ActionType::Input;
  type.payload = "HI";
  sc.actions = {tap, type};
  return sc;
}

}  // namespace fixture
