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

#include "renderwait/imaging/frame.hpp"
#include "renderwait/renderstate/render_state.hpp"

namespace renderwait::augment {

using imaging::Frame;

enum class AugmentKind { Stitch, Blend, LoadingInject };

inline constexpr int kSpinnerTicks = 12;
// Darkening applied at shadow_intensity = 1.
inline constexpr double kMaxShadow = 0.6;
inline constexpr double kBlendAlphaLo = 0.2;
inline constexpr double kBlendAlphaHi = 0.8;

struct SpinnerSpec {
  int radius = 8;
  int center_x = 0;
  int center_y = 0;
  double shadow_intensity = 0.0;  // [0, 1]
  int phase = 0;                  // rotation in ticks, [0, 12)
};

struct AugmentSpec {
  AugmentKind kind = AugmentKind::Stitch;
  std::uint64_t seed = 0;
  double crop_fraction = 0.5;  // Stitch
  double alpha = 0.5;          // Blend
  SpinnerSpec spinner;         // LoadingInject

  // Draws the kind-specific parameters from the seed for a frame of the given size.
  static AugmentSpec draw(AugmentKind kind, std::uint64_t seed, int width, int height);
};

struct Augmented {
  Frame frame;
  RenderState label;
};

// Columns [0, k) from a, [k, width) from b, k = round(crop_fraction * width).
Frame stitch(const Frame& a, const Frame& b, double crop_fraction);

// Per-pixel round(alpha * a + (1 - alpha) * b).
Frame blend(const Frame& a, const Frame& b, double alpha);

// Dims the frame by (1 - 0.6 * shadow_intensity) then draws a 12-tick spinner.
Frame inject_loading(const Frame& a, const SpinnerSpec& spec);

// Applies spec to a (and b for the two-frame transforms). Always Partial.
Augmented apply(const AugmentSpec& spec, const Frame& a, const Frame& b);

}  // namespace renderwait::augment
