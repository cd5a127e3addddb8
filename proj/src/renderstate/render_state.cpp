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
#include "renderwait/renderstate/render_state.hpp"

namespace renderwait {

std::optional<RenderLabel> parse_label(std::string_view s) {
  if (s == "fully_rendered") return RenderLabel::FullyRendered;
  if (s == "partial") return RenderLabel::Partial;
  return std::nullopt;
}

std::optional<PartialKind> parse_kind(std::string_view s) {
  if (s == "transiting") return PartialKind::Transiting;
  if (s == "loading") return PartialKind::Loading;
  return std::nullopt;
}

}  // namespace renderwait
