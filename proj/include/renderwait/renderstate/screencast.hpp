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

#include <filesystem>
#include <vector>

#include "renderwait/imaging/frame.hpp"
#include "renderwait/renderstate/render_state.hpp"

namespace renderwait {

// Frames captured from one scenario run, each with its ground-truth state.
struct Screencast {
  std::vector<imaging::Frame> frames;
  std::vector<RenderState> labels;  // parallel to frames
};

inline constexpr const char* kLabelsFile = "labels.csv";

// frame_<ts>.pgm|ppm files plus labels.csv with one "timestamp_ms,label,kind"
// line per frame (kind empty for fully rendered frames).
void write_screencast(const std::filesystem::path& dir, const Screencast& cast);
// Frames without a labels.csv entry are rejected; a missing labels.csv yields
// an unlabeled cast (every frame marked fully rendered) only when allow_unlabeled.
Screencast read_screencast(const std::filesystem::path& dir, bool allow_unlabeled = false);

}  // namespace renderwait
