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
#include "renderwait/replay/script.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "renderwait/common/error.hpp"

namespace renderwait::replay {

using nlohmann::json;

std::int64_t EventScript::total_recorded_delay_ms() const {
  std::int64_t total = 0;
  for (const ScriptEvent& e : events) total += e.recorded_delay_ms;
  return total;
}

void EventScript::validate() const {
  if (events.empty()) throw std::invalid_argument("event script '" + scenario + "' has no events");
  for (const ScriptEvent& e : events) {
    if (e.recorded_delay_ms < 0) throw std::invalid_argument("recorded delay must be non-negative");
  }
}

std::string script_to_json(const EventScript& script) {
  json events = json::array();
  for (const ScriptEvent& e : script.events) {
    json sel = {{"id", e.action.selector.id}};
    if (e.action.selector.text) sel["text"] = *e.action.selector.text;
    json act = {{"type", sim::to_string(e.action.type)}};
    if (e.action.type == sim::ActionType::Input) act["payload"] = e.action.payload;
    events.push_back({{"selector", sel}, {"action", act}, {"recorded_delay_ms", e.recorded_delay_ms}});
  }
  const json j = {{"scenario", script.scenario},
                  {"profile", script.profile},
                  {"expected_terminal", script.expected_terminal},
                  {"events", events}};
  return j.dump(2) + "\n";
}

EventScript parse_script(const std::string& json_text) {
  try {
    const json j = json::parse(json_text);
    EventScript s;
    s.scenario = j.at("scenario").get<std::string>();
    s.profile = j.at("profile").get<std::string>();
    s.expected_terminal = j.value("expected_terminal", "");
    for (const json& ej : j.at("events")) {
      ScriptEvent e;
      const json& sel = ej.at("selector");
      e.action.selector.id = sel.value("id", "");
      if (sel.contains("text")) e.action.selector.text = sel.at("text").get<std::string>();
      const auto type = sim::parse_action_type(ej.at("action").at("type").get<std::string>());
      if (!type) throw FormatError("unknown action type in event script");
      e.action.type = *type;
      e.action.payload = ej.at("action").value("payload", "");
      e.recorded_delay_ms = ej.at("recorded_delay_ms").get<std::int64_t>();
      s.events.push_back(std::move(e));
    }
    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed event script: ") + e.what());
  }
}

void save_script(const std::filesystem::path& path, const EventScript& script) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << script_to_json(script);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

EventScript load_script(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_script(ss.str());
}

}  // namespace renderwait::replay
