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

#include <vector>

#include "renderwait/imaging/frame.hpp"

namespace renderwait::imaging {

struct SsimParams {
  int window = 11;
  double gaussian_sigma = 1.5;
  double dynamic_range = 255.0;
  double c1 = (0.01 * 255.0) * (0.01 * 255.0);
  double c2 = (0.03 * 255.0) * (0.03 * 255.0);

  // Stabilizers derived from the dynamic range: c1 = (0.01 L)^2, c2 = (0.03 L)^2.
  static SsimParams for_range(double dynamic_range);

  // Throws std::invalid_argument if the window is even or < 3, or any
  // constant is non-positive.
  void validate() const;
};

// Per-frame Gaussian window statistics, reusable across many comparisons.
class SsimStats {
 public:
  SsimStats(const Frame& gray, const SsimParams& params);

  int width() const { return width_; }
  int height() const { return height_; }
  const SsimParams& params() const { return params_; }

 private:
  friend double ssim(const SsimStats& a, const SsimStats& b);

  SsimParams params_;
  int width_;
  int height_;
  std::vector<double> kernel_;
  std::vector<double> samples_;
  std::vector<double> mean_;
  std::vector<double> mean_sq_;
};

// Mean SSIM over every valid window placement. Inputs must be single-channel,
// equal-sized and at least window x window.
double ssim(const Frame& a, const Frame& b, const SsimParams& params = {});
double ssim(const SsimStats& a, const SsimStats& b);

}  // namespace renderwait::imaging
