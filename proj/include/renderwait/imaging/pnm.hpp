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
#include <string>
#include <vector>

#include "renderwait/common/error.hpp"
#include "renderwait/imaging/frame.hpp"

namespace renderwait::imaging {

// Binary PGM (P5) for gray frames, PPM (P6) for RGB; maxval 255.
std::string encode_pnm(const Frame& frame);
Frame decode_pnm(const std::string& bytes, std::int64_t timestamp_ms = 0);

void write_pnm(const std::filesystem::path& path, const Frame& frame);
Frame read_pnm(const std::filesystem::path& path, std::int64_t timestamp_ms = 0);

// frame_<timestamp:010d>.pgm|ppm
std::string frame_filename(const Frame& frame);
// Parses the timestamp out of a frame_<ts>.<ext> name; -1 if the name does not match.
std::int64_t timestamp_from_filename(const std::string& name);

// Frames in a screencast directory ordered by timestamp.
std::vector<std::filesystem::path> list_frames(const std::filesystem::path& dir);

}  // namespace renderwait::imaging
