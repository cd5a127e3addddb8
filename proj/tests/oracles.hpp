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

// Reference implementations used only by tests. Each one follows the textbook
// definition directly and shares no code with the library paths under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "renderwait/common/random.hpp"
#include "renderwait/imaging/frame.hpp"

namespace oracle {

using renderwait::Rng;
using renderwait::imaging::Frame;

inline Frame random_gray(int w, int h, Rng& rng) {
  Frame f(w, h, 1);
  for (auto& p : f.pixels()) p = static_cast<std::uint8_t>(rng.below(256));
  return f;
}

// Blocky frame with some structure so SSIM values spread over (0, 1).
inline Frame structured_gray(int w, int h, Rng& rng) {
  Frame f(w, h, 1);
  const int bx = 2 + static_cast<int>(rng.below(5));
  const int by = 2 + static_cast<int>(rng.below(5));
  std::vector<int> levels(static_cast<std::size_t>((w / bx + 1) * (h / by + 1)));
  for (int& l : levels) l = static_cast<int>(rng.below(256));
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) f.at(x, y) = static_cast<std::uint8_t>(levels[(y / by) * (w / bx + 1) + x / bx]);
  }
  return f;
}

inline Frame perturb(const Frame& base, int amplitude, Rng& rng) {
  Frame f = base;
  for (auto& p : f.pixels()) {
    const int d = static_cast<int>(rng.below(2 * amplitude + 1)) - amplitude;
    p = static_cast<std::uint8_t>(std::clamp(int(p) + d, 0, 255));
  }
  return f;
}

// Direct 2-D evaluation of Gaussian-window SSIM at every valid placement.
inline double ssim(const Frame& a, const Frame& b, int window = 11, double sigma = 1.5, double L = 255.0) {
  const double c1 = (0.01 * L) * (0.01 * L);
  const double c2 = (0.03 * L) * (0.03 * L);
  std::vector<double> w(static_cast<std::size_t>(window * window));
  double total = 0.0;
  const int r = window / 2;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      const double v = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
      w[(dy + r) * window + dx + r] = v;
      total += v;
    }
  }
  for (double& v : w) v /= total;
  double sum = 0.0;
  int count = 0;
  for (int y0 = 0; y0 + window <= a.height(); ++y0) {
    for (int x0 = 0; x0 + window <= a.width(); ++x0) {
      double ma = 0, mb = 0;
      for (int y = 0; y < window; ++y) {
        for (int x = 0; x < window; ++x) {
          ma += w[y * window + x] * a.at(x0 + x, y0 + y);
          mb += w[y * window + x] * b.at(x0 + x, y0 + y);
        }
      }
      double va = 0, vb = 0, cov = 0;
      for (int y = 0; y < window; ++y) {
        for (int x = 0; x < window; ++x) {
          const double da = a.at(x0 + x, y0 + y) - ma;
          const double db = b.at(x0 + x, y0 + y) - mb;
          va += w[y * window + x] * da * da;
          vb += w[y * window + x] * db * db;
          cov += w[y * window + x] * da * db;
        }
      }
      sum += ((2 * ma * mb + c1) * (2 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
      ++count;
    }
  }
  return sum / count;
}

// Constant images: variances and covariance vanish, so every window gives the
// same value.
inline double ssim_constant(double a, double b, double L = 255.0) {
  const double c1 = (0.01 * L) * (0.01 * L);
  const double c2 = (0.03 * L) * (0.03 * L);
  return ((2 * a * b + c1) * c2) / ((a * a + b * b + c1) * c2);
}

// Member with maximal summed similarity to the cluster; first wins ties.
inline std::size_t medoid(const std::vector<std::size_t>& members,
                          const std::function<double(std::size_t, std::size_t)>& sim) {
  std::size_t best = members.front();
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t a : members) {
    double s = 0.0;
    for (std::size_t b : members) s += (a == b) ? 1.0 : sim(a, b);
    if (s > best_score) {
      best_score = s;
      best = a;
    }
  }
  return best;
}

// Straight transcription of the agglomerative sampler: every round recomputes
// the whole cluster table from frame SSIMs.
inline std::vector<std::size_t> hac(const std::vector<Frame>& frames, double epsilon) {
  // The table is symmetric by definition, so each pair is evaluated in one order.
  auto sim = [&](std::size_t i, std::size_t j) { return oracle::ssim(frames[std::min(i, j)], frames[std::max(i, j)]); };
  std::vector<std::vector<std::size_t>> clusters;
  for (std::size_t i = 0; i < frames.size(); ++i) clusters.push_back({i});
  std::vector<std::size_t> out;
  while (clusters.size() > 1) {
    std::vector<std::size_t> med;
    for (const auto& c : clusters) med.push_back(medoid(c, sim));
    double best = -std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 1;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        const double s = sim(med[i], med[j]);
        if (s > best) {
          best = s;
          bi = i;
          bj = j;
        }
      }
    }
    auto ci = clusters[bi];
    auto cj = clusters[bj];
    clusters.erase(clusters.begin() + static_cast<long>(bj));
    clusters.erase(clusters.begin() + static_cast<long>(bi));
    if (best >= epsilon) {
      out.push_back(medoid(ci, sim));
    } else {
      ci.insert(ci.end(), cj.begin(), cj.end());
      clusters.push_back(ci);
    }
  }
  if (!clusters.empty()) out.push_back(medoid(clusters.front(), sim));
  return out;
}

// Bilinear sample with pixel-centre alignment and clamping.
inline double bilinear_at(const Frame& f, double sx, double sy) {
  sx = std::clamp(sx, 0.0, double(f.width() - 1));
  sy = std::clamp(sy, 0.0, double(f.height() - 1));
  const int x0 = static_cast<int>(std::floor(sx)), y0 = static_cast<int>(std::floor(sy));
  const int x1 = std::min(x0 + 1, f.width() - 1), y1 = std::min(y0 + 1, f.height() - 1);
  const double fx = sx - x0, fy = sy - y0;
  const double top = f.at(x0, y0) * (1 - fx) + f.at(x1, y0) * fx;
  const double bot = f.at(x0, y1) * (1 - fx) + f.at(x1, y1) * fx;
  return top * (1 - fy) + bot * fy;
}

inline double stable_bce(double z, double t) {
  const double p = 1.0 / (1.0 + std::exp(-z));
  // log-sigmoid evaluated without cancellation on either side.
  const double log_p = z >= 0 ? -std::log1p(std::exp(-z)) : z - std::log1p(std::exp(z));
  const double log_q = z >= 0 ? -z - std::log1p(std::exp(-z)) : -std::log1p(std::exp(z));
  (void)p;
  return -(t * log_p + (1 - t) * log_q);
}

// Norm-wise relative error ||a - b|| / max(||a||, ||b||, tiny).
inline double relative_error(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - b[i]) * (a[i] - b[i]);
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  const double denom = std::max({std::sqrt(na), std::sqrt(nb), 1e-12});
  return std::sqrt(diff) / denom;
}

}  // namespace oracle
