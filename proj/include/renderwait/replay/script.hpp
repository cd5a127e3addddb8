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
#include <string>
#include <vector>

#include "renderwait/sim/scenario.hpp"

namespace renderwait::replay {

struct ScriptEvent {
  sim::Action action;
  std::int64_t recorded_delay_ms = 0;  // wait observed before dispatching this event
  friend bool operator==(const ScriptEvent&, const ScriptEvent&) = default;
};

struct EventScript {
  std::string scenario;
  std::string profile;  // device used at record time
  std::string expected_terminal;
  std::vector<ScriptEvent> events;

  std::int64_t total_recorded_delay_ms() const;
  void validate() const;  // non-empty, non-negative delays
  friend bool operator==(const EventScript&, const EventScript&) = default;
};

std::string script_to_json(const EventScript& script);
EventScript parse_script(const std::string& json_text);
void save_script(const std::filesystem::path& path, const EventScript& script);
EventScript load_script(const std::filesystem::path& path);

}  // namespace renderwait::replay
