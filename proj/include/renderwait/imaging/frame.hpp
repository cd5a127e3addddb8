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
#include <span>
#include <vector>

namespace renderwait::imaging {

// Row-major 8-bit raster with 1 (gray) or 3 (RGB) interleaved channels.
class Frame {
 public:
  Frame() = default;
  // Zero-filled frame. Throws std::invalid_argument on bad geometry.
  Frame(int width, int height, int channels, std::int64_t timestamp_ms = 0);
  Frame(int width, int height, int channels, std::vector<std::uint8_t> pixels,
        std::int64_t timestamp_ms = 0);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  std::int64_t timestamp_ms() const { return timestamp_ms_; }
  void set_timestamp_ms(std::int64_t t);

  bool empty() const { return pixels_.empty(); }
  std::span<const std::uint8_t> pixels() const { return pixels_; }
  std::span<std::uint8_t> pixels() { return pixels_; }

  std::uint8_t at(int x, int y, int c = 0) const {
    return pixels_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }
  std::uint8_t& at(int x, int y, int c = 0) {
    return pixels_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }

  bool same_geometry(const Frame& other) const {
    return width_ == other.width_ && height_ == other.height_ && channels_ == other.channels_;
  }

  // Identity over geometry and pixels; the timestamp is not content.
  std::uint64_t content_hash() const;

  // Pixel equality (timestamps ignored).
  friend bool operator==(const Frame& a, const Frame& b) {
    return a.same_geometry(b) && a.pixels_ == b.pixels_;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<std::uint8_t> pixels_;
  std::int64_t timestamp_ms_ = 0;
};

Frame constant_frame(int width, int height, int channels, std::uint8_t value);

// BT.601 luma, rounded to nearest. Gray input is returned unchanged.
Frame to_luminance(const Frame& frame);

// Bilinear resampling with pixel-center alignment and edge clamping.
Frame resize_bilinear(const Frame& frame, int out_width, int out_height);

}  // namespace renderwait::imaging
