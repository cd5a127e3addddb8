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

#include <optional>
#include <string>
#include <string_view>

namespace renderwait {

enum class RenderLabel { FullyRendered, Partial };
enum class PartialKind { Transiting, Loading };

// A predicted state never carries a kind; ground truth for Partial frames does.
struct RenderState {
  RenderLabel label = RenderLabel::FullyRendered;
  std::optional<PartialKind> kind;

  static RenderState fully_rendered() { return {RenderLabel::FullyRendered, std::nullopt}; }
  static RenderState transiting() { return {RenderLabel::Partial, PartialKind::Transiting}; }
  static RenderState loading() { return {RenderLabel::Partial, PartialKind::Loading}; }
  static RenderState predicted(bool fully_rendered) {
    return {fully_rendered ? RenderLabel::FullyRendered : RenderLabel::Partial, std::nullopt};
  }

  bool is_fully_rendered() const { return label == RenderLabel::FullyRendered; }

  friend bool operator==(const RenderState&, const RenderState&) = default;
};

inline std::string_view to_string(RenderLabel l) {
  return l == RenderLabel::FullyRendered ? "fully_rendered" : "partial";
}

inline std::string_view to_string(PartialKind k) {
  return k == PartialKind::Transiting ? "transiting" : "loading";
}

std::optional<RenderLabel> parse_label(std::string_view s);
std::optional<PartialKind> parse_kind(std::string_view s);

}  // namespace renderwait
