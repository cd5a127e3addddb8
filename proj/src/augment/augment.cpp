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
#include "renderwait/augment/augment.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "renderwait/common/random.hpp"

namespace renderwait::augment {

namespace {

void require_same_geometry(const Frame& a, const Frame& b) {
  if (!a.same_geometry(b)) throw std::invalid_argument("augment inputs differ in geometry");
}

std::uint8_t round_u8(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

// Unit vectors at k * 30 degrees, screen coordinates (y down), k = 0 points up.
constexpr double kHalfRoot3 = 0.8660254037844386;
constexpr std::array<std::array<double, 2>, kSpinnerTicks> kTickDirs{{
    {0.0, -1.0}, {0.5, -kHalfRoot3}, {kHalfRoot3, -0.5}, {1.0, 0.0},
    {kHalfRoot3, 0.5}, {0.5, kHalfRoot3}, {0.0, 1.0}, {-0.5, kHalfRoot3},
    {-kHalfRoot3, 0.5}, {-1.0, 0.0}, {-kHalfRoot3, -0.5}, {-0.5, -kHalfRoot3},
}};

}  // namespace

Frame stitch(const Frame& a, const Frame& b, double crop_fraction) {
  require_same_geometry(a, b);
  if (!(crop_fraction > 0.0 && crop_fraction < 1.0)) {
    throw std::invalid_argument("crop_fraction must lie in (0, 1)");
  }
  const int k = static_cast<int>(std::lround(crop_fraction * a.width()));
  Frame out = b;
  out.set_timestamp_ms(a.timestamp_ms());
  const std::size_t row_bytes = static_cast<std::size_t>(k) * a.channels();
  for (int y = 0; y < a.height(); ++y) {
    const std::size_t off = static_cast<std::size_t>(y) * a.width() * a.channels();
    std::copy_n(a.pixels().begin() + static_cast<std::ptrdiff_t>(off), row_bytes,
                out.pixels().begin() + static_cast<std::ptrdiff_t>(off));
  }
  return out;
}

Frame blend(const Frame& a, const Frame& b, double alpha) {
  require_same_geometry(a, b);
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
  Frame out(a.width(), a.height(), a.channels(), a.timestamp_ms());
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  auto po = out.pixels();
  for (std::size_t i = 0; i < po.size(); ++i) {
    po[i] = round_u8(alpha * pa[i] + (1.0 - alpha) * pb[i]);
  }
  return out;
}

Frame inject_loading(const Frame& a, const SpinnerSpec& spec) {
  const int r = spec.radius;
  if (r < 4) throw std::invalid_argument("spinner radius must be at least 4 px");
  if (spec.center_x - r < 0 || spec.center_x + r >= a.width() || spec.center_y - r < 0 ||
      spec.center_y + r >= a.height()) {
    throw std::invalid_argument("spinner does not fit inside the frame");
  }
  if (!(spec.shadow_intensity >= 0.0 && spec.shadow_intensity <= 1.0)) {
    throw std::invalid_argument("shadow_intensity must lie in [0, 1]");
  }
  Frame out = a;
  const double factor = 1.0 - spec.shadow_intensity * kMaxShadow;
  if (factor != 1.0) {
    for (std::uint8_t& p : out.pixels()) p = round_u8(p * factor);
  }

  const double half_thickness = std::max(1.0, r * 0.14);
  const double inner = 0.45 * r;
  const double outer = r - half_thickness;
  const int phase = ((spec.phase % kSpinnerTicks) + kSpinnerTicks) % kSpinnerTicks;
  for (int y = spec.center_y - r; y <= spec.center_y + r; ++y) {
    for (int x = spec.center_x - r; x <= spec.center_x + r; ++x) {
      const double dx = x - spec.center_x;
      const double dy = y - spec.center_y;
      for (int t = 0; t < kSpinnerTicks; ++t) {
        const auto& dir = kTickDirs[static_cast<std::size_t>((t + phase) % kSpinnerTicks)];
        const double proj = std::clamp(dx * dir[0] + dy * dir[1], inner, outer);
        const double ex = dx - proj * dir[0];
        const double ey = dy - proj * dir[1];
        if (ex * ex + ey * ey <= half_thickness * half_thickness) {
          // Tick 11 leads and is darkest; the tail fades toward light gray.
          const auto level = round_u8(200.0 - 160.0 * t / (kSpinnerTicks - 1));
          for (int c = 0; c < out.channels(); ++c) out.at(x, y, c) = level;
          break;
        }
      }
    }
  }
  return out;
}

AugmentSpec AugmentSpec::draw(AugmentKind kind, std::uint64_t seed, int width, int height) {
  Rng rng(seed);
  AugmentSpec spec;
  spec.kind = kind;
  spec.seed = seed;
  switch (kind) {
    case AugmentKind::Stitch:
      spec.crop_fraction = rng.uniform(0.03, 0.97);
      break;
    case AugmentKind::Blend:
      spec.alpha = rng.uniform(kBlendAlphaLo, kBlendAlphaHi);
      break;
    case AugmentKind::LoadingInject: {
      const int span = std::min(width, height);
      const int lo = std::max(4, span / 14);
      const int hi = std::max(lo, span / 6);
      SpinnerSpec& s = spec.spinner;
      s.radius = lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
      if (2 * s.radius + 1 > width || 2 * s.radius + 1 > height) {
        throw std::invalid_argument("frame too small for a loading spinner");
      }
      const int cx_lo = s.radius, cx_hi = width - 1 - s.radius;
      const int cy_lo = s.radius, cy_hi = height - 1 - s.radius;
      s.center_x = cx_lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(cx_hi - cx_lo + 1)));
      s.center_y = cy_lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(cy_hi - cy_lo + 1)));
      s.shadow_intensity = rng.uniform01();
      s.phase = static_cast<int>(rng.below(kSpinnerTicks));
      break;
    }
  }
  return spec;
}

Augmented apply(const AugmentSpec& spec, const Frame& a, const Frame& b) {
  switch (spec.kind) {
    case AugmentKind::Stitch:
      return {stitch(a, b, spec.crop_fraction), RenderState::transiting()};
    case AugmentKind::Blend:
      return {blend(a, b, spec.alpha), RenderState::transiting()};
    case AugmentKind::LoadingInject:
      return {inject_loading(a, spec.spinner), RenderState::loading()};
  }
  throw std::invalid_argument("unknown augmentation kind");
}

}  // namespace renderwait::augment
