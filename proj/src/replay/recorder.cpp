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
#include "renderwait/replay/recorder.hpp"

#include "renderwait/sim/device.hpp"

namespace renderwait::replay {

EventScript record(const sim::Scenario& scenario, const sim::DeviceProfile& profile, std::uint64_t seed) {
  if (scenario.actions.empty()) throw RecordError("scenario '" + scenario.name + "' has no actions to record");
  sim::Device dev(scenario, profile, seed);
  EventScript script;
  script.scenario = scenario.name;
  script.profile = profile.name;
  for (std::size_t i = 0; i < scenario.actions.size(); ++i) {
    const auto wait = dev.time_until_settled();
    if (!wait) throw RecordError("event " + std::to_string(i) + " of '" + scenario.name + "' never becomes dispatchable");
    dev.advance(*wait);
    script.events.push_back({scenario.actions[i], *wait});
    if (const sim::DispatchOutcome r = dev.dispatch(scenario.actions[i]); !r) {
      throw RecordError("event " + std::to_string(i) + " of '" + scenario.name + "' failed: " + r.reason);
    }
  }
  if (!dev.time_until_settled()) throw RecordError("scenario '" + scenario.name + "' never settles after its last event");
  script.expected_terminal = scenario.expected_terminal.empty() ? dev.current_screen() : scenario.expected_terminal;
  return script;
}

}  // namespace renderwait::replay
