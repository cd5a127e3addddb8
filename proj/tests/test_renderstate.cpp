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

#include <filesystem>
#include <map>
#include <set>

#include "oracles.hpp"
#include "renderwait/nn/checkpoint.hpp"
#include "renderwait/renderstate/classifier.hpp"
#include "renderwait/renderstate/dataset.hpp"
#include "renderwait/renderstate/metrics.hpp"
#include "renderwait/renderstate/screencast.hpp"

namespace rw = renderwait;
using rw::imaging::Frame;

namespace {

std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("rw_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::vector<rw::LabeledFrame> distinct_items(std::size_t n_full, std::size_t n_partial, rw::Rng& rng) {
  std::vector<rw::LabeledFrame> items;
  for (std::size_t i = 0; i < n_full + n_partial; ++i) {
    items.push_back({oracle::random_gray(6, 6, rng),
                     i < n_full ? rw::RenderLabel::FullyRendered : rw::RenderLabel::Partial, rw::Origin::Captured});
  }
  return items;
}

rw::nn::NetConfig tiny_net() {
  rw::nn::NetConfig c;
  c.input_width = 14;
  c.input_height = 24;
  c.stem_channels = 4;
  c.expansion = 2;
  c.blocks = {{8, 2}, {8, 1}};
  return c;
}

}  // namespace

TEST(RenderState, NamesRoundTrip) {
  EXPECT_EQ(rw::to_string(rw::RenderLabel::Partial), "partial");
  EXPECT_EQ(rw::parse_label("fully_rendered"), rw::RenderLabel::FullyRendered);
  EXPECT_EQ(rw::parse_kind("loading"), rw::PartialKind::Loading);
  EXPECT_FALSE(rw::parse_label("maybe").has_value());
  EXPECT_FALSE(rw::RenderState::predicted(false).kind.has_value());
}

TEST(Metrics, PerfectAndDegenerate) {
  rw::Confusion perfect;
  perfect.add(true, true);
  perfect.add(false, false);
  const auto m = rw::metrics_from(perfect);
  EXPECT_EQ(m.precision, 1.0);
  EXPECT_EQ(m.recall, 1.0);
  EXPECT_EQ(m.f1, 1.0);

  rw::Confusion none;
  none.add(false, true);
  none.add(false, false);
  const auto z = rw::metrics_from(none);
  EXPECT_EQ(z.recall, 0.0);
  EXPECT_EQ(z.precision, 0.0);
  EXPECT_FALSE(z.precision_defined);
}

TEST(Metrics, HandBuiltConfusion) {
  rw::Confusion c;
  c.tp = 2;
  c.fp = 1;
  c.fn = 1;
  const auto m = rw::metrics_from(c);
  EXPECT_NEAR(m.precision, 2.0 / 3, 1e-15);
  EXPECT_NEAR(m.recall, 2.0 / 3, 1e-15);
  EXPECT_NEAR(m.f1, 2.0 / 3, 1e-15);
  c.fp = 5;
  const auto n = rw::metrics_from(c);
  EXPECT_NEAR(n.f1, 2 * n.precision * n.recall / (n.precision + n.recall), 1e-12);
}

TEST(Classifier, DecisionBoundary) {
  EXPECT_TRUE(rw::decide(0.5).is_fully_rendered());
  EXPECT_FALSE(rw::decide(std::nextafter(0.5, 0.0)).is_fully_rendered());
}

TEST(Classifier, PreprocessScalesToUnitRange) {
  const auto buf = rw::preprocess(rw::imaging::constant_frame(140, 240, 3, 255), rw::nn::NetConfig{});
  ASSERT_EQ(buf.size(), 56u * 96u);
  for (float v : buf) EXPECT_FLOAT_EQ(v, 1.0f);
}

TEST(Screencast, WriteReadRoundTrip) {
  rw::Rng rng(1);
  rw::Screencast cast;
  const std::vector<rw::RenderState> states{rw::RenderState::fully_rendered(), rw::RenderState::loading(),
                                            rw::RenderState::transiting()};
  for (int i = 0; i < 3; ++i) {
    Frame f = oracle::random_gray(8, 6, rng);
    f.set_timestamp_ms(100 * i);
    cast.frames.push_back(f);
    cast.labels.push_back(states[i]);
  }
  const auto dir = temp_dir("cast");
  rw::write_screencast(dir, cast);
  const rw::Screencast back = rw::read_screencast(dir);
  ASSERT_EQ(back.frames.size(), 3u);
  EXPECT_EQ(back.labels, cast.labels);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(back.frames[i], cast.frames[i]);
    EXPECT_EQ(back.frames[i].timestamp_ms(), 100 * i);
  }
  std::filesystem::remove(dir / rw::kLabelsFile);
  EXPECT_THROW(rw::read_screencast(dir), std::exception);
  EXPECT_EQ(rw::read_screencast(dir, true).frames.size(), 3u);
  std::filesystem::remove_all(dir);
}

TEST(Dataset, IdenticalFramesCollapseThenAugment) {
  rw::Screencast cast;
  for (int i = 0; i < 100; ++i) {
    Frame f = rw::imaging::constant_frame(56, 96, 1, 200);
    f.at(i % 56, 10) = 10;  // distinct timestamps only matter for files; keep content identical below
    f = rw::imaging::constant_frame(56, 96, 1, 200);
    f.set_timestamp_ms(i * 40);
    cast.frames.push_back(f);
    cast.labels.push_back(rw::RenderState::fully_rendered());
  }
  rw::DatasetOptions opt;
  opt.seed = 5;
  const rw::Dataset ds = rw::build_dataset({cast}, opt);
  std::size_t captured = 0, partial = 0;
  for (const auto& item : ds.items) {
    if (item.origin == rw::Origin::Captured) ++captured;
    if (item.label == rw::RenderLabel::Partial) {
      ++partial;
      EXPECT_EQ(item.origin, rw::Origin::Injected);  // no distinct partner exists
    }
  }
  EXPECT_EQ(captured, 50u);  // pairwise collapse keeps ceil(100 / 2)
  EXPECT_EQ(partial, 69u);   // ceil(1.38 * 50)
}

TEST(Dataset, SplitCountsAndStratification) {
  rw::Rng rng(2);
  const auto single = distinct_items(1000, 0, rng);
  const auto s1 = rw::assign_splits(single, {}, 3);
  std::map<rw::Split, int> c1;
  for (auto s : s1) ++c1[s];
  EXPECT_EQ(c1[rw::Split::Train], 800);
  EXPECT_EQ(c1[rw::Split::Val], 100);
  EXPECT_EQ(c1[rw::Split::Test], 100);

  const auto mixed = distinct_items(420, 580, rng);
  const auto s2 = rw::assign_splits(mixed, {}, 3);
  std::map<rw::Split, std::pair<int, int>> c2;
  for (std::size_t i = 0; i < mixed.size(); ++i) {
    auto& p = c2[s2[i]];
    (mixed[i].label == rw::RenderLabel::Partial ? p.first : p.second)++;
  }
  for (auto split : {rw::Split::Train, rw::Split::Val, rw::Split::Test}) {
    const double frac = double(c2[split].first) / (c2[split].first + c2[split].second);
    EXPECT_NEAR(frac, 0.58, 0.05);
  }
  EXPECT_NEAR(c2[rw::Split::Test].first + c2[rw::Split::Test].second, 100, 1);
}

TEST(Dataset, DuplicateContentNeverCrossesSplits) {
  rw::Rng rng(3);
  auto items = distinct_items(200, 200, rng);
  for (int i = 0; i < 150; ++i) items.push_back(items[rng.below(items.size())]);
  const auto splits = rw::assign_splits(items, {}, 11);
  std::map<std::uint64_t, std::set<rw::Split>> where;
  for (std::size_t i = 0; i < items.size(); ++i) where[items[i].frame.content_hash()].insert(splits[i]);
  for (const auto& [hash, s] : where) EXPECT_EQ(s.size(), 1u);
  EXPECT_EQ(rw::assign_splits(items, {}, 11), splits);
}

TEST(Dataset, ManifestAndFilesRoundTrip) {
  rw::Rng rng(4);
  rw::Dataset ds;
  ds.items = distinct_items(10, 14, rng);
  ds.items[3].origin = rw::Origin::Blended;
  ds.seed = 77;
  ds.splits = rw::assign_splits(ds.items, ds.ratios, ds.seed);
  const auto dir = temp_dir("dataset");
  const rw::DatasetManifest m = rw::write_dataset(dir, ds);
  EXPECT_EQ(rw::DatasetManifest::from_json(m.to_json()).entries, m.entries);
  const rw::Dataset back = rw::read_dataset(dir);
  ASSERT_EQ(back.items.size(), ds.items.size());
  EXPECT_EQ(back.splits, ds.splits);
  EXPECT_EQ(back.seed, 77u);
  for (std::size_t i = 0; i < ds.items.size(); ++i) {
    EXPECT_EQ(back.items[i].frame, ds.items[i].frame);
    EXPECT_EQ(back.items[i].label, ds.items[i].label);
    EXPECT_EQ(back.items[i].origin, ds.items[i].origin);
  }
  EXPECT_THROW(rw::DatasetManifest::from_json("{\"seed\": 1}"), rw::FormatError);
  std::filesystem::remove_all(dir);
}

TEST(Dataset, BuildIsDeterministicAndRejectsEmptyInput) {
  rw::Rng rng(5);
  rw::Screencast cast;
  for (int i = 0; i < 12; ++i) {
    cast.frames.push_back(oracle::structured_gray(40, 60, rng));
    cast.labels.push_back(i % 3 ? rw::RenderState::fully_rendered() : rw::RenderState::transiting());
  }
  rw::DatasetOptions opt;
  opt.seed = 8;
  const auto a = rw::build_dataset({cast}, opt);
  const auto b = rw::build_dataset({cast}, opt);
  ASSERT_EQ(a.items.size(), b.items.size());
  EXPECT_EQ(a.splits, b.splits);
  for (std::size_t i = 0; i < a.items.size(); ++i) EXPECT_EQ(a.items[i].frame, b.items[i].frame);
  EXPECT_THROW(rw::build_dataset({}, opt), std::invalid_argument);
}

TEST(Training, RejectsSingleClassAndIsDeterministic) {
  rw::Rng rng(6);
  std::vector<rw::Sample> only_full;
  for (int i = 0; i < 6; ++i) only_full.push_back({std::vector<float>(14 * 24, float(rng.uniform01())), 1.0f});
  rw::TrainOptions opt;
  opt.net = tiny_net();
  opt.epochs = 3;
  opt.batch_size = 4;
  EXPECT_THROW(rw::train_classifier(only_full, {}, opt), std::invalid_argument);

  std::vector<rw::Sample> train, val;
  for (int i = 0; i < 24; ++i) {
    std::vector<float> img(14 * 24);
    const bool full = i % 2 == 0;
    for (std::size_t p = 0; p < img.size(); ++p) img[p] = full ? float(rng.uniform(0.6, 1.0)) : float(rng.uniform(0.0, 0.4));
    (i < 18 ? train : val).push_back({img, full ? 1.0f : 0.0f});
  }
  auto r1 = rw::train_classifier(train, val, opt);
  auto r2 = rw::train_classifier(train, val, opt);
  EXPECT_EQ(rw::nn::save_checkpoint(r1.best), rw::nn::save_checkpoint(r2.best));
  ASSERT_EQ(r1.history.size(), 3u);
  EXPECT_LE(r1.history[static_cast<std::size_t>(r1.best_epoch)].val_loss, r1.history[0].val_loss);
  EXPECT_DOUBLE_EQ(r1.history[0].learning_rate, 0.01);
}

TEST(Classifier, PredictIsDeterministicAndConfidenceBounded) {
  rw::nn::Network net(tiny_net());
  net.init(3);
  const rw::Classifier clf(std::move(net));
  rw::Rng rng(7);
  const Frame f = oracle::random_gray(70, 120, rng);
  const auto a = clf.predict(f), b = clf.predict(f);
  EXPECT_EQ(a.confidence, b.confidence);
  EXPECT_GE(a.confidence, 0.0);
  EXPECT_LE(a.confidence, 1.0);
  EXPECT_EQ(a.state, rw::decide(a.confidence));
  rw::Dataset empty;
  EXPECT_THROW(rw::evaluate(clf, empty, rw::Split::Test), std::invalid_argument);
}
