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
#include "renderwait/imaging/frame.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "renderwait/common/hash.hpp"

namespace renderwait::imaging {

namespace {

void check_geometry(int width, int height, int channels) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("frame dimensions must be positive, got " +
                                std::to_string(width) + "x" + std::to_string(height));
  }
  if (channels != 1 && channels != 3) {
    throw std::invalid_argument("frame must have 1 or 3 channels, got " +
                                std::to_string(channels));
  }
}

}  // namespace

Frame::Frame(int width, int height, int channels, std::int64_t timestamp_ms)
    : Frame(width, height, channels,
            std::vector<std::uint8_t>(static_cast<std::size_t>(std::max(width, 0)) *
                                      std::max(height, 0) * std::max(channels, 0)),
            timestamp_ms) {}

Frame::Frame(int width, int height, int channels, std::vector<std::uint8_t> pixels,
             std::int64_t timestamp_ms)
    : width_(width), height_(height), channels_(channels), pixels_(std::move(pixels)) {
  check_geometry(width, height, channels);
  if (pixels_.size() != static_cast<std::size_t>(width) * height * channels) {
    throw std::invalid_argument("pixel buffer length does not match frame geometry");
  }
  set_timestamp_ms(timestamp_ms);
}

void Frame::set_timestamp_ms(std::int64_t t) {
  if (t < 0) throw std::invalid_argument("timestamp must be non-negative");
  timestamp_ms_ = t;
}

std::uint64_t Frame::content_hash() const {
  Fnv1a h;
  h.update_u64(static_cast<std::uint64_t>(width_));
  h.update_u64(static_cast<std::uint64_t>(height_));
  h.update_u64(static_cast<std::uint64_t>(channels_));
  h.update(pixels_);
  return h.digest();
}

Frame constant_frame(int width, int height, int channels, std::uint8_t value) {
  Frame f(width, height, channels);
  std::fill(f.pixels().begin(), f.pixels().end(), value);
  return f;
}

Frame to_luminance(const Frame& frame) {
  if (frame.channels() == 1) return frame;
  Frame out(frame.width(), frame.height(), 1, frame.timestamp_ms());
  const auto src = frame.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    const double y = 0.299 * src[3 * i] + 0.587 * src[3 * i + 1] + 0.114 * src[3 * i + 2];
    dst[i] = static_cast<std::uint8_t>(std::clamp(std::lround(y), 0L, 255L));
  }
  return out;
}

namespace {

struct Tap {
  int lo;
  int hi;
  double w;  // weight of hi
};

std::vector<Tap> bilinear_taps(int in, int out) {
  std::vector<Tap> taps(static_cast<std::size_t>(out));
  const double scale = static_cast<double>(in) / out;
  for (int i = 0; i < out; ++i) {
    double src = (i + 0.5) * scale - 0.5;
    src = std::clamp(src, 0.0, static_cast<double>(in - 1));
    const int lo = static_cast<int>(std::floor(src));
    const int hi = std::min(lo + 1, in - 1);
    taps[static_cast<std::size_t>(i)] = {lo, hi, src - lo};
  }
  return taps;
}

}  // namespace

Frame resize_bilinear(const Frame& frame, int out_width, int out_height) {
  if (out_width <= 0 || out_height <= 0) {
    throw std::invalid_argument("resize target dimensions must be positive");
  }
  if (out_width == frame.width() && out_height == frame.height()) return frame;

  const auto xs = bilinear_taps(frame.width(), out_width);
  const auto ys = bilinear_taps(frame.height(), out_height);
  const int ch = frame.channels();
  Frame out(out_width, out_height, ch, frame.timestamp_ms());
  for (int y = 0; y < out_height; ++y) {
    const Tap& ty = ys[static_cast<std::size_t>(y)];
    for (int x = 0; x < out_width; ++x) {
      const Tap& tx = xs[static_cast<std::size_t>(x)];
      for (int c = 0; c < ch; ++c) {
        const double top = frame.at(tx.lo, ty.lo, c) * (1.0 - tx.w) + frame.at(tx.hi, ty.lo, c) * tx.w;
        const double bottom =
            frame.at(tx.lo, ty.hi, c) * (1.0 - tx.w) + frame.at(tx.hi, ty.hi, c) * tx.w;
        const double v = top * (1.0 - ty.w) + bottom * ty.w;
        out.at(x, y, c) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
      }
    }
  }
  return out;
}

}  // namespace renderwait::imaging
