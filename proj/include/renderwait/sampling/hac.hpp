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

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "renderwait/imaging/frame.hpp"
#include "renderwait/imaging/ssim.hpp"

namespace renderwait::sampling {

using imaging::Frame;
using imaging::SsimParams;

inline constexpr double kDefaultEpsilon = 0.9;
// Frames are compared at this resolution unless HacOptions overrides it.
inline constexpr int kAnalysisWidth = 112;
inline constexpr int kAnalysisHeight = 192;

struct Cluster {
  std::vector<std::size_t> members;  // indices into the input frame list
  std::size_t medoid = 0;
};

// Symmetric frame-pair SSIM table, diagonal fixed at 1.
class PairwiseSimilarity {
 public:
  // Frames must already be single-channel and equal-sized.
  PairwiseSimilarity(std::span<const Frame> gray_frames, const SsimParams& params);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return table_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<double> table_;
};

// Member with the highest mean similarity to the cluster (ties: earliest member).
std::size_t medoid_of(std::span<const std::size_t> members, const PairwiseSimilarity& sim);

// Medoid linkage.
double cluster_similarity(const Cluster& a, const Cluster& b, const PairwiseSimilarity& sim);

struct HacRound {
  std::span<const Cluster> live;  // clusters remaining after the round
  const Cluster& first;
  const Cluster& second;
  double similarity;
  bool collapsed;  // similarity reached epsilon; first's medoid was emitted
};

struct HacOptions {
  double epsilon = kDefaultEpsilon;
  SsimParams ssim{};
  // Luminance frames are resized to this size before comparison; 0 keeps the
  // native resolution.
  int analysis_width = kAnalysisWidth;
  int analysis_height = kAnalysisHeight;
  // Called after every merge/removal round.
  std::function<void(const HacRound&)> on_round;
};

struct HacResult {
  std::vector<std::size_t> kept;       // emission order
  std::vector<std::size_t> discarded;  // ascending
};

// Agglomerative duplicate removal over frames of one GUI-state group.
// Each round removes the most similar cluster pair (ties: lowest position
// pair). At or above epsilon the first cluster's medoid is emitted and the
// second cluster is dropped; otherwise the union is appended to the list. The
// last surviving cluster's medoid is emitted when the loop ends.
// Throws std::invalid_argument for empty input, epsilon outside (0, 1] or
// mixed frame sizes.
HacResult hac_sample_indices(std::span<const Frame> frames, const HacOptions& options = {});

// Same procedure on the native resolution, returning the kept frames.
std::vector<Frame> hac_sample(std::span<const Frame> frames, double epsilon = kDefaultEpsilon,
                              const SsimParams& params = {});

// Luminance + resize used for similarity analysis (identity size when 0).
Frame similarity_view(const Frame& frame, int width, int height);

}  // namespace renderwait::sampling
