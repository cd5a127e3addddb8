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

#include "renderwait/common/error.hpp"
#include "renderwait/nn/network.hpp"

namespace renderwait::nn {

inline constexpr std::uint32_t kCheckpointVersion = 1;

// Layout: "RWNN", u32 version, u32 manifest length, JSON manifest (topology,
// parameter and buffer names/shapes), parameter blobs in manifest order, then
// batch-norm running statistics. All numbers little-endian, reals float32.
std::string save_checkpoint(Network& net);

// Throws FormatError on bad magic, unknown version, truncation or shape mismatch.
Network load_checkpoint(const std::string& bytes);

void write_checkpoint(const std::filesystem::path& path, Network& net);
Network read_checkpoint(const std::filesystem::path& path);

}  // namespace renderwait::nn
