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
#include "renderwait/sampling/hac.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <stdexcept>

namespace renderwait::sampling {

PairwiseSimilarity::PairwiseSimilarity(std::span<const Frame> gray_frames,
                                       const SsimParams& params)
    : n_(gray_frames.size()), table_(n_ * n_, 1.0) {
  std::vector<imaging::SsimStats> stats;
  stats.reserve(n_);
  for (const Frame& f : gray_frames) stats.emplace_back(f, params);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double s = imaging::ssim(stats[i], stats[j]);
      table_[i * n_ + j] = s;
      table_[j * n_ + i] = s;
    }
  }
}

std::size_t medoid_of(std::span<const std::size_t> members, const PairwiseSimilarity& sim) {
  if (members.empty()) throw std::invalid_argument("medoid of an empty cluster");
  std::size_t best = members.front();
  double best_sum = -std::numeric_limits<double>::infinity();
  for (std::size_t a : members) {
    double sum = 0.0;
    for (std::size_t b : members) sum += sim(a, b);
    if (sum > best_sum) {
      best_sum = sum;
      best = a;
    }
  }
  return best;
}

double cluster_similarity(const Cluster& a, const Cluster& b, const PairwiseSimilarity& sim) {
  return sim(a.medoid, b.medoid);
}

Frame similarity_view(const Frame& frame, int width, int height) {
  Frame gray = imaging::to_luminance(frame);
  if (width <= 0 || height <= 0) return gray;
  return imaging::resize_bilinear(gray, width, height);
}

HacResult hac_sample_indices(std::span<const Frame> frames, const HacOptions& options) {
  if (frames.empty()) throw std::invalid_argument("hac_sample needs at least one frame");
  if (!(options.epsilon > 0.0 && options.epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1]");
  }
  for (const Frame& f : frames) {
    if (f.width() != frames.front().width() || f.height() != frames.front().height()) {
      throw std::invalid_argument("hac_sample frames must share dimensions");
    }
  }

  std::vector<Frame> views;
  views.reserve(frames.size());
  for (const Frame& f : frames) {
    views.push_back(similarity_view(f, options.analysis_width, options.analysis_height));
  }
  const PairwiseSimilarity sim(views, options.ssim);

  std::vector<Cluster> live;
  live.reserve(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) live.push_back({{i}, i});

  HacResult result;
  std::vector<bool> kept(frames.size(), false);
  while (live.size() > 1) {
    std::size_t bi = 0, bj = 1;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < live.size(); ++i) {
      for (std::size_t j = i + 1; j < live.size(); ++j) {
        const double s = cluster_similarity(live[i], live[j], sim);
        if (s > best) {
          best = s;
          bi = i;
          bj = j;
        }
      }
    }
    Cluster first = std::move(live[bi]);
    Cluster second = std::move(live[bj]);
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(bj));
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(bi));
    const bool collapsed = best >= options.epsilon;
    if (collapsed) {
      result.kept.push_back(first.medoid);
      kept[first.medoid] = true;
    } else {
      Cluster merged;
      merged.members = first.members;
      merged.members.insert(merged.members.end(), second.members.begin(), second.members.end());
      merged.medoid = medoid_of(merged.members, sim);
      live.push_back(std::move(merged));
    }
    if (options.on_round) options.on_round(HacRound{live, first, second, best, collapsed});
  }
  if (!live.empty()) {
    result.kept.push_back(live.front().medoid);
    kept[live.front().medoid] = true;
  }
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (!kept[i]) result.discarded.push_back(i);
  }
  return result;
}

std::vector<Frame> hac_sample(std::span<const Frame> frames, double epsilon,
                              const SsimParams& params) {
  HacOptions options;
  options.epsilon = epsilon;
  options.ssim = params;
  options.analysis_width = 0;
  options.analysis_height = 0;
  const HacResult r = hac_sample_indices(frames, options);
  std::vector<Frame> out;
  out.reserve(r.kept.size());
  for (std::size_t i : r.kept) out.push_back(frames[i]);
  return out;
}

}  // namespace renderwait::sampling
