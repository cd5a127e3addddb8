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
#include "renderwait/imaging/ssim.hpp"

#include <cmath>
#include <stdexcept>

namespace renderwait::imaging {

SsimParams SsimParams::for_range(double dynamic_range) {
  SsimParams p;
  p.dynamic_range = dynamic_range;
  p.c1 = (0.01 * dynamic_range) * (0.01 * dynamic_range);
  p.c2 = (0.03 * dynamic_range) * (0.03 * dynamic_range);
  return p;
}

void SsimParams::validate() const {
  if (window < 3 || window % 2 == 0) {
    throw std::invalid_argument("ssim window must be odd and >= 3");
  }
  if (!(gaussian_sigma > 0.0) || !(c1 > 0.0) || !(c2 > 0.0) || !(dynamic_range > 0.0)) {
    throw std::invalid_argument("ssim sigma, constants and dynamic range must be positive");
  }
}

namespace {

std::vector<double> gaussian_kernel(int window, double sigma) {
  std::vector<double> k(static_cast<std::size_t>(window));
  const int r = window / 2;
  double sum = 0.0;
  for (int i = 0; i < window; ++i) {
    const double d = i - r;
    k[static_cast<std::size_t>(i)] = std::exp(-(d * d) / (2.0 * sigma * sigma));
    sum += k[static_cast<std::size_t>(i)];
  }
  for (double& v : k) v /= sum;
  return k;
}

// Separable "valid" filtering: output is (w - n + 1) x (h - n + 1).
std::vector<double> filter_valid(const std::vector<double>& src, int w, int h,
                                 const std::vector<double>& k) {
  const int n = static_cast<int>(k.size());
  const int ow = w - n + 1;
  const int oh = h - n + 1;
  std::vector<double> rows(static_cast<std::size_t>(ow) * h);
  for (int y = 0; y < h; ++y) {
    const double* in = &src[static_cast<std::size_t>(y) * w];
    double* out = &rows[static_cast<std::size_t>(y) * ow];
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += k[static_cast<std::size_t>(i)] * in[x + i];
      out[x] = acc;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(ow) * oh, 0.0);
  for (int y = 0; y < oh; ++y) {
    double* o = &out[static_cast<std::size_t>(y) * ow];
    for (int i = 0; i < n; ++i) {
      const double ki = k[static_cast<std::size_t>(i)];
      const double* r = &rows[static_cast<std::size_t>(y + i) * ow];
      for (int x = 0; x < ow; ++x) o[x] += ki * r[x];
    }
  }
  return out;
}

}  // namespace

SsimStats::SsimStats(const Frame& gray, const SsimParams& params)
    : params_(params), width_(gray.width()), height_(gray.height()) {
  params_.validate();
  if (gray.channels() != 1) throw std::invalid_argument("ssim requires single-channel frames");
  if (width_ < params_.window || height_ < params_.window) {
    throw std::invalid_argument("frame smaller than the ssim window");
  }
  kernel_ = gaussian_kernel(params_.window, params_.gaussian_sigma);
  const auto px = gray.pixels();
  samples_.assign(px.begin(), px.end());
  std::vector<double> sq(samples_.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = samples_[i] * samples_[i];
  mean_ = filter_valid(samples_, width_, height_, kernel_);
  mean_sq_ = filter_valid(sq, width_, height_, kernel_);
}

double ssim(const SsimStats& a, const SsimStats& b) {
  if (a.width_ != b.width_ || a.height_ != b.height_) {
    throw std::invalid_argument("ssim inputs differ in size");
  }
  const SsimParams& p = a.params_;
  if (p.window != b.params_.window || p.gaussian_sigma != b.params_.gaussian_sigma ||
      p.c1 != b.params_.c1 || p.c2 != b.params_.c2) {
    throw std::invalid_argument("ssim inputs prepared with different parameters");
  }
  std::vector<double> prod(a.samples_.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = a.samples_[i] * b.samples_[i];
  const std::vector<double> mean_ab = filter_valid(prod, a.width_, a.height_, a.kernel_);

  double total = 0.0;
  for (std::size_t i = 0; i < mean_ab.size(); ++i) {
    const double ma = a.mean_[i];
    const double mb = b.mean_[i];
    const double va = a.mean_sq_[i] - ma * ma;
    const double vb = b.mean_sq_[i] - mb * mb;
    const double cov = mean_ab[i] - ma * mb;
    const double num = (2.0 * ma * mb + p.c1) * (2.0 * cov + p.c2);
    const double den = (ma * ma + mb * mb + p.c1) * (va + vb + p.c2);
    total += num / den;
  }
  return total / static_cast<double>(mean_ab.size());
}

double ssim(const Frame& a, const Frame& b, const SsimParams& params) {
  if (a.channels() != 1 || b.channels() != 1) {
    throw std::invalid_argument("ssim requires single-channel frames");
  }
  if (a.width() != b.width() || a.height() != b.height()) {
    throw std::invalid_argument("ssim inputs differ in size");
  }
  return ssim(SsimStats(a, params), SsimStats(b, params));
}

}  // namespace renderwait::imaging
