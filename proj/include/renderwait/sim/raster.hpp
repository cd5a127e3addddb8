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

#include <map>
#include <string>

#include "renderwait/imaging/frame.hpp"
#include "renderwait/sim/scenario.hpp"

namespace renderwait::sim {

using InputValues = std::map<std::string, std::string>;  // widget id -> typed text

// Steady-state raster of a screen at the given device resolution (1 channel).
imaging::Frame render_screen(const ScreenSpec& screen, const InputValues& inputs, int width, int height);

// Fraction of pixels that differ between two equal-sized frames.
double differing_fraction(const imaging::Frame& a, const imaging::Frame& b);

}  // namespace renderwait::sim
