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
#include "renderwait/renderstate/metrics.hpp"

namespace renderwait {

void Confusion::add(bool predicted_full, bool actually_full) {
  if (predicted_full) {
    (actually_full ? tp : fp) += 1;
  } else {
    (actually_full ? fn : tn) += 1;
  }
}

Metrics metrics_from(const Confusion& c) {
  Metrics m;
  m.confusion = c;
  const double tp = static_cast<double>(c.tp);
  if (c.tp + c.fp == 0) {
    m.precision_defined = false;
    m.precision = 0.0;
  } else {
    m.precision = tp / static_cast<double>(c.tp + c.fp);
  }
  m.recall = c.tp + c.fn == 0 ? 0.0 : tp / static_cast<double>(c.tp + c.fn);
  m.f1 = m.precision + m.recall > 0.0 ? 2.0 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
  return m;
}

}  // namespace renderwait
