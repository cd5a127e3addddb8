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

#include "renderwait/augment/augment.hpp"
#include "renderwait/common/error.hpp"
#include "renderwait/sim/device.hpp"
#include "sim_fixture.hpp"

namespace rw = renderwait;
namespace sim = renderwait::sim;

namespace {

sim::DeviceProfile flagship() { return *sim::find_builtin_profile("flagship"); }

sim::Action tap(const std::string& id) {
  sim::Action a;
  a.selector.id = id;
  return a;
}

}  // namespace

TEST(Profiles, BuiltinsAreValid) {
  ASSERT_EQ(sim::builtin_profiles().size(), 4u);
  for (const auto& p : sim::builtin_profiles()) EXPECT_NO_THROW(p.validate());
  EXPECT_FALSE(sim::find_builtin_profile("tablet"));
  sim::DeviceProfile bad{"x", 16, 240, 1.0};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = {"x", 140, 240, 0.5};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Device, LoadingThenSlideThenSettled) {
  const auto sc = fixture::two_screens(sim::TransitionKind::Slide, 300, 500);
  sim::Device dev(sc, flagship(), 1);
  EXPECT_TRUE(dev.settled());
  const rw::imaging::Frame home = dev.screenshot();
  ASSERT_TRUE(dev.dispatch(tap("open")));
  EXPECT_EQ(dev.current_screen(), "detail");
  EXPECT_EQ(dev.ground_truth_state(), rw::RenderState::loading());
  EXPECT_EQ(*dev.time_until_settled(), 800);
  dev.advance(499);
  EXPECT_EQ(dev.ground_truth_state(), rw::RenderState::loading());
  dev.advance(1);
  EXPECT_EQ(dev.ground_truth_state(), rw::RenderState::transiting());
  dev.advance(299);
  EXPECT_FALSE(dev.settled());
  dev.advance(1);
  EXPECT_TRUE(dev.settled());
  EXPECT_EQ(dev.time_until_settled(), 0);
  EXPECT_GT(sim::differing_fraction(home, dev.screenshot()), 0.01);
}

TEST(Device, MidSlideIsAStitchOfBothScreens) {
  const auto sc = fixture::two_screens(sim::TransitionKind::Slide, 400, 0);
  const auto prof = flagship();
  sim::Device dev(sc, prof, 1);
  const rw::imaging::Frame from = sim::render_screen(sc.screen("home"), {}, prof.width, prof.height);
  const rw::imaging::Frame to = sim::render_screen(sc.screen("detail"), {}, prof.width, prof.height);
  ASSERT_TRUE(dev.dispatch(tap("open")));
  dev.advance(100);  // p = 0.25
  const rw::imaging::Frame mid = dev.screenshot();
  EXPECT_EQ(mid.timestamp_ms(), 100);
  const int k = static_cast<int>(std::lround(0.75 * prof.width));
  for (int y = 0; y < prof.height; ++y) {
    for (int x = 0; x < prof.width; ++x) {
      ASSERT_EQ(mid.at(x, y), x < k ? from.at(x, y) : to.at(x, y)) << x << "," << y;
    }
  }
}

TEST(Device, MidFadeIsABlend) {
  const auto sc = fixture::two_screens(sim::TransitionKind::Fade, 200, 0);
  const auto prof = *sim::find_builtin_profile("budget");  // scale 1.6: 320 ms fade
  sim::Device dev(sc, prof, 1);
  const rw::imaging::Frame from = sim::render_screen(sc.screen("home"), {}, prof.width, prof.height);
  const rw::imaging::Frame to = sim::render_screen(sc.screen("detail"), {}, prof.width, prof.height);
  ASSERT_TRUE(dev.dispatch(tap("open")));
  EXPECT_EQ(*dev.time_until_settled(), 320);
  dev.advance(80);
  const double p = 0.25;
  const rw::imaging::Frame mid = dev.screenshot();
  for (int y = 0; y < prof.height; ++y) {
    for (int x = 0; x < prof.width; ++x) {
      const double expect = p * to.at(x, y) + (1 - p) * from.at(x, y);
      ASSERT_LE(std::abs(mid.at(x, y) - expect), 0.5 + 1e-9);
    }
  }
}

TEST(Device, RenderScaleMultipliesDurations) {
  const auto sc = fixture::two_screens(sim::TransitionKind::Slide, 250, 1000);
  for (const auto& p : sim::builtin_profiles()) {
    sim::Device dev(sc, p, 3);
    ASSERT_TRUE(dev.dispatch(tap("open")));
    EXPECT_EQ(*dev.time_until_settled(), std::llround(1000 * p.render_scale) + std::llround(250 * p.render_scale))
        << p.name;
    EXPECT_EQ(dev.screenshot().width(), p.width);
    EXPECT_EQ(dev.screenshot().height(), p.height);
  }
}

TEST(Device, DispatchWhileBusy) {
  const auto sc = fixture::two_screens(sim::TransitionKind::Slide, 100, 200);
  sim::Device dev(sc, flagship(), 1);
  ASSERT_TRUE(dev.dispatch(tap("open")));
  EXPECT_FALSE(dev.dispatch(sc.actions[1]));  // loading
  dev.advance(250);
  EXPECT_FALSE(dev.dispatch(sc.actions[1]));  // p = 0.5
  dev.advance(44);
  EXPECT_FALSE(dev.dispatch(sc.actions[1]));  // p = 0.94
  dev.advance(1);
  EXPECT_TRUE(dev.dispatch(sc.actions[1]));   // p = 0.95 lands on the incoming screen
  EXPECT_TRUE(dev.settled());
  EXPECT_EQ(dev.inputs("detail").at("box"), "HI");
}

TEST(Device, SelectorsBackAndInputs) {
  const auto sc = fixture::two_screens(sim::TransitionKind::Instant, 0, 0);
  sim::Device dev(sc, flagship(), 1);
  sim::Action by_text;
  by_text.selector = {"stale_id", std::string("OPEN")};
  EXPECT_TRUE(dev.dispatch(by_text));
  EXPECT_EQ(dev.current_screen(), "detail");
  EXPECT_TRUE(dev.settled());
  EXPECT_FALSE(dev.dispatch(tap("nothing")));
  sim::Action bad_input = sc.actions[1];
  bad_input.selector.id = "pic";
  EXPECT_FALSE(dev.dispatch(bad_input));
  EXPECT_TRUE(dev.dispatch(tap("pic")));  // no target: no-op
  EXPECT_EQ(dev.current_screen(), "detail");
  sim::Action back;
  back.type = sim::ActionType::Back;
  EXPECT_TRUE(dev.dispatch(back));
  EXPECT_EQ(dev.current_screen(), "home");
  EXPECT_FALSE(dev.dispatch(back));
  EXPECT_THROW(dev.advance(-1), std::invalid_argument);
}

TEST(Device, InputChangesTheScreenshot) {
  const auto sc = fixture::two_screens(sim::TransitionKind::Instant, 0, 0);
  sim::Device dev(sc, flagship(), 1);
  ASSERT_TRUE(dev.dispatch(tap("open")));
  const auto before = dev.screenshot();
  ASSERT_TRUE(dev.dispatch(sc.actions[1]));
  EXPECT_NE(dev.screenshot(), before);
}

TEST(Device, NeverLatencyStaysLoading) {
  auto sc = fixture::two_screens(sim::TransitionKind::Slide, 100, 0);
  sc.screens[1].network_delay = sim::LatencyModel::never();
  sim::Device dev(sc, flagship(), 1);
  ASSERT_TRUE(dev.dispatch(tap("open")));
  dev.advance(10'000'000);
  EXPECT_EQ(dev.ground_truth_state(), rw::RenderState::loading());
  EXPECT_FALSE(dev.time_until_settled());
  EXPECT_NE(dev.screenshot(), sim::render_screen(sc.screen("home"), {}, 210, 360));
}

TEST(Device, OutgoingScreenStaysDimmedAfterLoading) {
  const auto sc = fixture::two_screens(sim::TransitionKind::Slide, 400, 300);
  const auto prof = flagship();
  sim::Device dev(sc, prof, 1);
  const rw::imaging::Frame from = sim::render_screen(sc.screen("home"), {}, prof.width, prof.height);
  const rw::imaging::Frame to = sim::render_screen(sc.screen("detail"), {}, prof.width, prof.height);
  ASSERT_TRUE(dev.dispatch(tap("open")));
  dev.advance(301);  // first millisecond of the slide
  const rw::imaging::Frame f = dev.screenshot();
  EXPECT_EQ(dev.ground_truth_state(), rw::RenderState::transiting());
  const double factor = 1.0 - sim::kLoadingShadow * rw::augment::kMaxShadow;
  for (int y = 0; y < prof.height; y += 7) {
    for (int x = 0; x < prof.width - 2; x += 5) {
      ASSERT_EQ(f.at(x, y), std::lround(from.at(x, y) * factor)) << x << "," << y;
    }
  }
  dev.advance(199);  // p = 0.5
  const rw::imaging::Frame mid = dev.screenshot();
  for (int x = prof.width / 2; x < prof.width; ++x) ASSERT_EQ(mid.at(x, 100), to.at(x, 100));
}

TEST(Device, RandomLatencyIsIndependentOfPollingCadence) {
  auto sc = fixture::two_screens(sim::TransitionKind::Fade, 100, 0);
  sc.screens[1].network_delay = {sim::LatencyKind::LogNormal, std::log(600.0), 0.8};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    sim::Device a(sc, flagship(), seed), b(sc, flagship(), seed);
    ASSERT_TRUE(a.dispatch(tap("open")));
    ASSERT_TRUE(b.dispatch(tap("open")));
    const std::int64_t total = *a.time_until_settled();
    while (!a.settled()) a.advance(7);
    while (!b.settled()) b.advance(130);
    EXPECT_GE(a.now_ms(), total);
    EXPECT_LT(a.now_ms(), total + 7);
    EXPECT_GE(b.now_ms(), total);
    EXPECT_LT(b.now_ms(), total + 130);
    EXPECT_EQ(a.screenshot().content_hash(), b.screenshot().content_hash());
  }
}

TEST(Latency, SamplesMatchTheirModels) {
  rw::Rng rng(9);
  EXPECT_EQ(*sim::LatencyModel::fixed(42).sample(rng), 42.0);
  const sim::LatencyModel uni{sim::LatencyKind::Uniform, 100, 200};
  for (int i = 0; i < 200; ++i) {
    const double v = *uni.sample(rng);
    EXPECT_GE(v, 100);
    EXPECT_LT(v, 200);
  }
  const sim::LatencyModel ln{sim::LatencyKind::LogNormal, std::log(500.0), 0.5};
  std::vector<double> logs;
  for (int i = 0; i < 4000; ++i) logs.push_back(std::log(*ln.sample(rng)));
  double mean = 0;
  for (double l : logs) mean += l;
  mean /= logs.size();
  EXPECT_NEAR(mean, std::log(500.0), 0.03);
  EXPECT_FALSE(sim::LatencyModel::never().sample(rng));

  rw::Rng r1(4), r2(4);
  (void)sim::LatencyModel::fixed(1).sample(r1);
  (void)ln.sample(r2);
  EXPECT_EQ(r1.next(), r2.next());
}

TEST(Scenario, ValidationRejectsNearIdenticalScreens) {
  auto sc = fixture::two_screens(sim::TransitionKind::Slide, 100, 0);
  EXPECT_NO_THROW(sc.validate());
  auto twin = sc;
  twin.screens[1] = twin.screens[0];
  twin.screens[1].id = "detail";
  EXPECT_THROW(twin.validate(), std::invalid_argument);
  auto dangling = sc;
  dangling.screens[0].widgets[0].target = "nowhere";
  EXPECT_THROW(dangling.validate(), std::invalid_argument);
  auto outside = sc;
  outside.screens[0].widgets[0].rect = {100, 60, 60, 30};
  EXPECT_THROW(outside.validate(), std::invalid_argument);
}

TEST(Scenario, JsonRoundTrip) {
  auto sc = fixture::two_screens(sim::TransitionKind::Fade, 150, 320);
  sc.tags = {"stress"};
  sc.profiles = {flagship(), {"odd", 100, 180, 1.25}};
  const sim::Scenario back = sim::parse_scenario(sim::scenario_to_json(sc));
  EXPECT_EQ(sim::scenario_to_json(back), sim::scenario_to_json(sc));
  EXPECT_EQ(back.actions, sc.actions);
  EXPECT_TRUE(back.has_tag("stress"));
  EXPECT_EQ(back.profile("odd").render_scale, 1.25);
  EXPECT_EQ(back.profile("legacy").width, 112);
  EXPECT_THROW(sim::parse_scenario("{"), rw::FormatError);
  EXPECT_THROW(sim::parse_scenario("{\"name\": 3}"), rw::FormatError);
}

TEST(Capture, LabelsFollowGroundTruthAndAreDeterministic) {
  const auto sc = fixture::two_screens(sim::TransitionKind::Slide, 300, 500);
  sim::CaptureOptions opt;
  opt.frame_interval_ms = 100;
  opt.dwell_ms = 200;
  const auto cast = sim::capture_screencast(sc, flagship(), 2, opt);
  // dwell 2, loading 5, slide 3, dwell 2, input (settled) dwell 2
  ASSERT_EQ(cast.frames.size(), 14u);
  int loading = 0, transit = 0;
  for (const auto& l : cast.labels) {
    loading += l == rw::RenderState::loading();
    transit += l == rw::RenderState::transiting();
  }
  EXPECT_EQ(loading, 5);
  EXPECT_EQ(transit, 3);
  const auto again = sim::capture_screencast(sc, flagship(), 2, opt);
  for (std::size_t i = 0; i < cast.frames.size(); ++i) EXPECT_EQ(cast.frames[i], again.frames[i]);
}
