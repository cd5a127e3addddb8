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
#include "renderwait/sim/raster.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "renderwait/common/hash.hpp"
#include "renderwait/common/random.hpp"

namespace renderwait::sim {

namespace {

constexpr int kGlyphUnit = 2;
constexpr int kCellWidth = 8;
constexpr int kCellHeight = 12;

class Painter {
 public:
  Painter(imaging::Frame& frame) : frame_(frame), sx_(frame.width() / double(kCanvasWidth)),
                                   sy_(frame.height() / double(kCanvasHeight)) {}

  // Fills a canvas-space rectangle, clipped to clip (also canvas space).
  void fill(const Rect& r, int value, const Rect& clip) {
    const int cx0 = std::max(r.x, clip.x);
    const int cy0 = std::max(r.y, clip.y);
    const int cx1 = std::min(r.x + r.w, clip.x + clip.w);
    const int cy1 = std::min(r.y + r.h, clip.y + clip.h);
    if (cx0 >= cx1 || cy0 >= cy1) return;
    const int x0 = px(cx0, sx_), x1 = px(cx1, sx_);
    const int y0 = px(cy0, sy_), y1 = px(cy1, sy_);
    const auto v = static_cast<std::uint8_t>(std::clamp(value, 0, 255));
    for (int y = y0; y < std::min(y1, frame_.height()); ++y) {
      for (int x = x0; x < std::min(x1, frame_.width()); ++x) frame_.at(x, y) = v;
    }
  }
  void fill(const Rect& r, int value) { fill(r, value, {0, 0, kCanvasWidth, kCanvasHeight}); }

  void border(const Rect& r, int value) {
    fill({r.x, r.y, r.w, 1}, value);
    fill({r.x, r.y + r.h - 1, r.w, 1}, value);
    fill({r.x, r.y, 1, r.h}, value);
    fill({r.x + r.w - 1, r.y, 1, r.h}, value);
  }

  void text(const std::string& s, std::uint64_t pattern, int x, int y, int value, const Rect& clip) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == ' ') continue;
      Fnv1a h;
      h.update_u64(pattern);
      h.update_u64(static_cast<unsigned char>(s[i]));
      std::uint64_t bits = h.digest();
      // Keep at least a couple of set cells so every glyph is visible.
      bits |= 0x2a;
      const int gx = x + static_cast<int>(i) * kCellWidth;
      for (int row = 0; row < 5; ++row) {
        for (int col = 0; col < 3; ++col) {
          if ((bits >> (row * 3 + col)) & 1U) {
            fill({gx + col * kGlyphUnit, y + row * kGlyphUnit, kGlyphUnit, kGlyphUnit}, value, clip);
          }
        }
      }
    }
  }

 private:
  static int px(int c, double s) { return static_cast<int>(std::lround(c * s)); }

  imaging::Frame& frame_;
  double sx_;
  double sy_;
};

int ink_for(int fill) { return fill > 128 ? 40 : 235; }

int text_top(const Rect& r) { return r.y + std::max(1, (r.h - 5 * kGlyphUnit) / 2); }

}  // namespace

imaging::Frame render_screen(const ScreenSpec& screen, const InputValues& inputs, int width, int height) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("render_screen: empty resolution");
  imaging::Frame frame(width, height, 1);
  Painter p(frame);
  const Rect canvas{0, 0, kCanvasWidth, kCanvasHeight};
  p.fill(canvas, screen.background);
  const Rect header{0, 0, kCanvasWidth, kHeaderHeight};
  p.fill(header, screen.header);
  p.text(screen.title, fnv1a(screen.id), 6, text_top(header), ink_for(screen.header), header);

  for (const Widget& w : screen.widgets) {
    const Rect& r = w.rect;
    switch (w.kind) {
      case WidgetKind::Button:
        p.fill(r, w.fill);
        p.border(r, std::max(0, w.fill - 70));
        p.text(w.text, w.text_pattern, r.x + 4, text_top(r), ink_for(w.fill), r);
        break;
      case WidgetKind::Text:
        p.text(w.text, w.text_pattern, r.x, text_top(r), ink_for(screen.background), r);
        break;
      case WidgetKind::Image: {
        Rng rng(mix_seed(w.text_pattern, fnv1a(w.id)));
        const int bw = std::max(1, r.w / 4);
        const int bh = std::max(1, r.h / 4);
        for (int by = r.y; by < r.y + r.h; by += bh) {
          for (int bx = r.x; bx < r.x + r.w; bx += bw) {
            p.fill({bx, by, bw, bh}, 40 + static_cast<int>(rng.below(180)), r);
          }
        }
        break;
      }
      case WidgetKind::Input: {
        p.fill(r, 255);
        p.border(r, 60);
        const auto it = inputs.find(w.id);
        if (it != inputs.end() && !it->second.empty()) {
          p.text(it->second, w.text_pattern, r.x + 4, text_top(r), 20, r);
        } else {
          p.text(w.text, w.text_pattern, r.x + 4, text_top(r), 170, r);
        }
        break;
      }
    }
  }
  return frame;
}

double differing_fraction(const imaging::Frame& a, const imaging::Frame& b) {
  if (!a.same_geometry(b)) throw std::invalid_argument("differing_fraction: frame geometry mismatch");
  if (a.empty()) return 0.0;
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  std::size_t diff = 0;
  for (std::size_t i = 0; i < pa.size(); ++i) diff += pa[i] != pb[i];
  return static_cast<double>(diff) / static_cast<double>(pa.size());
}

}  // namespace renderwait::sim
