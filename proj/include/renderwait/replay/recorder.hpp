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
#include <stdexcept>

#include "renderwait/replay/script.hpp"
#include "renderwait/sim/scenario.hpp"

namespace renderwait::replay {

inline constexpr const char* kRecordProfile = "flagship";

class RecordError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Drives the scenario's actions with exact oracle waits and captures each wait
// as the event's recorded delay.
EventScript record(const sim::Scenario& scenario, const sim::DeviceProfile& profile, std::uint64_t seed);

}  // namespace renderwait::replay
