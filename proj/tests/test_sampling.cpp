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
#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "renderwait/sampling/hac.hpp"

namespace rw = renderwait;
namespace smp = renderwait::sampling;
using rw::imaging::Frame;

namespace {

smp::HacOptions native(double eps) {
  smp::HacOptions o;
  o.epsilon = eps;
  o.analysis_width = 0;
  o.analysis_height = 0;
  return o;
}

std::vector<Frame> mixed_set(rw::Rng& rng, std::size_t n) {
  std::vector<Frame> bases{oracle::structured_gray(16, 16, rng), oracle::structured_gray(16, 16, rng)};
  std::vector<Frame> out;
  for (std::size_t i = 0; i < n; ++i) {
    const Frame& base = bases[rng.below(bases.size())];
    switch (rng.below(3)) {
      case 0: out.push_back(base); break;
      case 1: out.push_back(oracle::perturb(base, 1 + int(rng.below(60)), rng)); break;
      default: out.push_back(oracle::random_gray(16, 16, rng)); break;
    }
  }
  return out;
}

}  // namespace

TEST(Hac, SingleFrameIsKept) {
  rw::Rng rng(1);
  const std::vector<Frame> one{oracle::random_gray(16, 16, rng)};
  const auto r = smp::hac_sample_indices(one, native(0.9));
  EXPECT_EQ(r.kept, std::vector<std::size_t>{0});
  EXPECT_TRUE(r.discarded.empty());
}

TEST(Hac, IdenticalFramesCollapsePairwise) {
  // Each collapse removes both clusters of the pair, so n identical frames
  // leave ceil(n / 2) representatives.
  const Frame f = rw::imaging::constant_frame(16, 16, 1, 90);
  for (std::size_t n = 1; n <= 9; ++n) {
    const std::vector<Frame> frames(n, f);
    const auto r = smp::hac_sample_indices(frames, native(0.9));
    EXPECT_EQ(r.kept.size(), (n + 1) / 2) << n;
  }
  const std::vector<Frame> three(3, f);
  EXPECT_EQ(smp::hac_sample_indices(three, native(0.9)).kept, (std::vector<std::size_t>{0, 2}));
}

TEST(Hac, AllDissimilarMergesToOne) {
  rw::Rng rng(2);
  std::vector<Frame> frames;
  for (int i = 0; i < 6; ++i) frames.push_back(oracle::random_gray(16, 16, rng));
  const auto r = smp::hac_sample_indices(frames, native(0.99));
  EXPECT_EQ(r.kept.size(), 1u);
  EXPECT_EQ(r.discarded.size(), 5u);
}

TEST(Hac, MatchesBruteForceOracle) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    rw::Rng rng(seed);
    const std::size_t n = 1 + rng.below(6);
    const auto frames = mixed_set(rng, n);
    const double eps = 0.2 + 0.8 * rng.uniform01();
    const auto r = smp::hac_sample_indices(frames, native(eps));
    EXPECT_EQ(r.kept, oracle::hac(frames, eps)) << "seed " << seed;
  }
}

TEST(Hac, PartitionAndResultInvariants) {
  rw::Rng rng(3);
  const auto frames = mixed_set(rng, 6);
  auto opt = native(0.6);
  std::size_t rounds = 0;
  opt.on_round = [&](const smp::HacRound& round) {
    ++rounds;
    std::set<std::size_t> seen;
    for (const auto& c : round.live) {
      EXPECT_FALSE(c.members.empty());
      EXPECT_NE(std::find(c.members.begin(), c.members.end(), c.medoid), c.members.end());
      for (std::size_t m : c.members) EXPECT_TRUE(seen.insert(m).second);
    }
    EXPECT_EQ(round.collapsed, round.similarity >= 0.6);
  };
  const auto r = smp::hac_sample_indices(frames, opt);
  EXPECT_GT(rounds, 0u);
  std::vector<std::size_t> all = r.kept;
  all.insert(all.end(), r.discarded.begin(), r.discarded.end());
  std::sort(all.begin(), all.end());
  std::vector<std::size_t> want(frames.size());
  std::iota(want.begin(), want.end(), 0);
  EXPECT_EQ(all, want);
  EXPECT_TRUE(std::is_sorted(r.discarded.begin(), r.discarded.end()));
  EXPECT_EQ(smp::hac_sample_indices(frames, opt).kept, r.kept);
}

TEST(Hac, MedoidMatchesRowMeanArgmax) {
  rw::Rng rng(4);
  for (int t = 0; t < 10; ++t) {
    const auto frames = mixed_set(rng, 5);
    const smp::PairwiseSimilarity sim(frames, {});
    std::vector<std::size_t> members{4, 1, 3};
    auto fn = [&](std::size_t i, std::size_t j) { return oracle::ssim(frames[i], frames[j]); };
    EXPECT_EQ(smp::medoid_of(members, sim), oracle::medoid(members, fn));
  }
}

TEST(Hac, ClusterSimilarityUsesMedoids) {
  const Frame x = rw::imaging::constant_frame(16, 16, 1, 30);
  rw::Rng rng(5);
  const Frame y = oracle::random_gray(16, 16, rng);
  const std::vector<Frame> frames{x, x, y};
  const smp::PairwiseSimilarity sim(frames, {});
  EXPECT_DOUBLE_EQ(smp::cluster_similarity({{0, 1}, 0}, {{0}, 0}, sim), 1.0);
  EXPECT_DOUBLE_EQ(smp::cluster_similarity({{0}, 0}, {{2}, 2}, sim), rw::imaging::ssim(x, y));
}

TEST(Hac, Errors) {
  EXPECT_THROW(smp::hac_sample_indices({}, native(0.9)), std::invalid_argument);
  const std::vector<Frame> frames{rw::imaging::constant_frame(16, 16, 1, 0), rw::imaging::constant_frame(16, 16, 1, 0)};
  EXPECT_THROW(smp::hac_sample_indices(frames, native(0.0)), std::invalid_argument);
  EXPECT_THROW(smp::hac_sample_indices(frames, native(1.5)), std::invalid_argument);
  const std::vector<Frame> mixed{rw::imaging::constant_frame(16, 16, 1, 0), rw::imaging::constant_frame(17, 16, 1, 0)};
  EXPECT_THROW(smp::hac_sample_indices(mixed, native(0.9)), std::invalid_argument);
}

TEST(Hac, SampleReturnsKeptFrames) {
  rw::Rng rng(6);
  const auto frames = mixed_set(rng, 5);
  const auto r = smp::hac_sample_indices(frames, native(0.7));
  const auto kept = smp::hac_sample(frames, 0.7);
  ASSERT_EQ(kept.size(), r.kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) EXPECT_EQ(kept[i], frames[r.kept[i]]);
}

TEST(Hac, AnalysisViewIsDownscaledLuminance) {
  Frame rgb = rw::imaging::constant_frame(224, 384, 3, 200);
  const Frame v = smp::similarity_view(rgb, smp::kAnalysisWidth, smp::kAnalysisHeight);
  EXPECT_EQ(v.width(), 112);
  EXPECT_EQ(v.height(), 192);
  EXPECT_EQ(v.channels(), 1);
}
