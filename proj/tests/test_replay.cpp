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

#include "renderwait/common/error.hpp"
#include "renderwait/replay/bench.hpp"
#include "renderwait/replay/recorder.hpp"
#include "renderwait/replay/replayer.hpp"
#include "renderwait/sim/raster.hpp"
#include "sim_fixture.hpp"

namespace rw = renderwait;
namespace sim = renderwait::sim;
namespace rp = renderwait::replay;

namespace {

sim::DeviceProfile flagship() { return *sim::find_builtin_profile("flagship"); }

// Stand-in predictor: a frame counts as rendered when it matches a steady screen of the fixture.
rp::RenderPredictor steady_predictor(const sim::Scenario& sc, const sim::DeviceProfile& p) {
  std::vector<std::uint64_t> hashes;
  for (const auto& s : sc.screens) {
    hashes.push_back(sim::render_screen(s, {}, p.width, p.height).content_hash());
    hashes.push_back(sim::render_screen(s, {{"box", "HI"}}, p.width, p.height).content_hash());
  }
  return [hashes](const rw::imaging::Frame& f) {
    return std::find(hashes.begin(), hashes.end(), f.content_hash()) != hashes.end();
  };
}

}  // namespace

TEST(Strategy, ParseAndLabel) {
  EXPECT_EQ(rp::parse_strategy("fixed:2").multiplier, 2.0);
  EXPECT_EQ(rp::parse_strategy("fixed:2").label(), "fixed:2");
  EXPECT_EQ(rp::parse_strategy("fixed:0.5").label(), "fixed:0.5");
  EXPECT_EQ(rp::parse_strategy("adaptive").kind, rp::StrategyKind::AdaptiveRender);
  EXPECT_EQ(rp::parse_strategy("oracle").label(), "oracle");
  for (const char* bad : {"fixed:", "fixed:-1", "fixed:abc", "sometimes", ""}) {
    EXPECT_THROW(rp::parse_strategy(bad), std::invalid_argument) << bad;
  }
  EXPECT_THROW(rp::WaitStrategy::adaptive(0).validate(), std::invalid_argument);
}

TEST(Recorder, DelaysAreTheSettleTimes) {
  const auto sc = fixture::two_screens(sim::TransitionKind::Instant, 0, 500);
  const rp::EventScript script = rp::record(sc, flagship(), 1);
  ASSERT_EQ(script.events.size(), 2u);
  EXPECT_EQ(script.events[0].recorded_delay_ms, 0);
  EXPECT_EQ(script.events[1].recorded_delay_ms, 500);
  EXPECT_EQ(script.total_recorded_delay_ms(), 500);
  EXPECT_EQ(script.expected_terminal, "detail");
  EXPECT_EQ(script.profile, "flagship");

  auto hang = sc;
  hang.screens[1].network_delay = sim::LatencyModel::never();
  EXPECT_THROW(rp::record(hang, flagship(), 1), rp::RecordError);
}

TEST(Script, JsonRoundTrip) {
  const auto sc = fixture::two_screens(sim::TransitionKind::Slide, 120, 330);
  rp::EventScript script = rp::record(sc, flagship(), 4);
  script.events[0].action.selector.text = "OPEN";
  EXPECT_EQ(rp::parse_script(rp::script_to_json(script)), script);
  const auto path = std::filesystem::temp_directory_path() / "rw_script.json";
  rp::save_script(path, script);
  EXPECT_EQ(rp::load_script(path), script);
  std::filesystem::remove(path);
  EXPECT_THROW(rp::parse_script("[]"), rw::FormatError);
  EXPECT_THROW(rp::parse_script("{\"scenario\":\"x\",\"profile\":\"p\",\"events\":[{\"recorded_delay_ms\":-3,"
                                "\"selector\":{\"id\":\"a\"},\"action\":{\"type\":\"tap\"}}]}"),
               std::exception);
}

TEST(Replay, FixedWaitElapsedIsAffineInK) {
  const auto sc = fixture::two_screens(sim::TransitionKind::Slide, 200, 600);
  const rp::EventScript script = rp::record(sc, flagship(), 1);
  const std::int64_t total = script.total_recorded_delay_ms();
  ASSERT_EQ(total, 800);
  std::vector<std::int64_t> elapsed;
  for (double k : {1.0, 2.0, 5.0, 10.0}) {
    const auto r = rp::replay(sc, script, flagship(), rp::WaitStrategy::fixed(k), {1, {}});
    EXPECT_TRUE(r.reproduced) << k;
    // terminal check adds nothing: the input event leaves the device settled
    EXPECT_EQ(r.elapsed_ms, std::llround(k * total));
    elapsed.push_back(r.elapsed_ms);
  }
  EXPECT_EQ(elapsed[3] - elapsed[2], 5 * total);
}

TEST(Replay, ShortFixedWaitMisTaps) {
  const auto sc = fixture::two_screens(sim::TransitionKind::Slide, 200, 600);
  const rp::EventScript script = rp::record(sc, flagship(), 1);
  const auto r = rp::replay(sc, script, flagship(), rp::WaitStrategy::fixed(0.5), {1, {}});
  EXPECT_FALSE(r.reproduced);
  ASSERT_EQ(r.events.size(), 2u);
  EXPECT_FALSE(r.events[1].dispatched_ok);
  EXPECT_NE(r.failure.find("loading"), std::string::npos);
}

TEST(Replay, AdaptivePollsUntilRendered) {
  const auto sc = fixture::two_screens(sim::TransitionKind::Slide, 200, 650);
  const auto prof = *sim::find_builtin_profile("legacy");  // 1300 + 400 ms
  const rp::EventScript script = rp::record(sc, flagship(), 1);
  const auto r = rp::replay(sc, script, prof, rp::WaitStrategy::adaptive(), {1, steady_predictor(sc, prof)});
  ASSERT_TRUE(r.reproduced) << r.failure;
  EXPECT_EQ(r.events[0].polls, 1);
  EXPECT_EQ(r.events[0].wait_ms, 0);
  EXPECT_EQ(r.events[1].wait_ms, 1700);
  EXPECT_EQ(r.events[1].polls, 17);
  EXPECT_FALSE(r.events[1].fallback);
  EXPECT_EQ(r.elapsed_ms, 1700);

  const auto oracle = rp::replay(sc, script, prof, rp::WaitStrategy::oracle(), {1, {}});
  EXPECT_TRUE(oracle.reproduced);
  EXPECT_EQ(oracle.elapsed_ms, 1700);
}

TEST(Replay, AdaptiveFallsBackAtMaxWait) {
  const auto sc = fixture::two_screens(sim::TransitionKind::Slide, 200, 300);
  const rp::EventScript script = rp::record(sc, flagship(), 1);
  auto hang = sc;
  hang.screens[1].network_delay = sim::LatencyModel::never();
  const auto strat = rp::WaitStrategy::adaptive(100, 3000);
  const auto r = rp::replay(hang, script, flagship(), strat, {1, steady_predictor(sc, flagship())});
  EXPECT_FALSE(r.reproduced);
  ASSERT_EQ(r.events.size(), 2u);
  EXPECT_TRUE(r.events[1].fallback);
  EXPECT_EQ(r.events[1].wait_ms, 3000);
  EXPECT_FALSE(r.events[1].dispatched_ok);
  EXPECT_EQ(r.elapsed_ms, 3000);

  const auto never_ready = [](const rw::imaging::Frame&) { return false; };
  const auto slow = rp::replay(sc, script, flagship(), strat, {1, never_ready});
  EXPECT_TRUE(slow.events[0].fallback);
  EXPECT_EQ(slow.events[0].wait_ms, 3000);
  EXPECT_THROW(rp::replay(sc, script, flagship(), strat, {1, {}}), std::invalid_argument);
}

TEST(Replay, WrongTerminalIsNotReproduced) {
  auto sc = fixture::two_screens(sim::TransitionKind::Instant, 0, 0);
  rp::EventScript script = rp::record(sc, flagship(), 1);
  script.expected_terminal = "home";
  const auto r = rp::replay(sc, script, flagship(), rp::WaitStrategy::oracle(), {1, {}});
  EXPECT_FALSE(r.reproduced);
  EXPECT_NE(r.failure.find("expected 'home'"), std::string::npos);
}

TEST(Bench, AggregatesAndCsv) {
  const auto a = fixture::two_screens(sim::TransitionKind::Slide, 200, 400);
  auto b = a;
  b.name = "fixture_b";
  b.profiles = {flagship(), *sim::find_builtin_profile("legacy")};
  rp::BenchOptions opt;
  opt.strategies = {rp::WaitStrategy::fixed(1), rp::WaitStrategy::fixed(10), rp::WaitStrategy::oracle()};
  opt.record_seed = 3;
  opt.seeds = {3};
  std::size_t seen = 0;
  opt.on_report = [&](const rp::ReplayReport&) { ++seen; };
  a.validate();
  const auto result = rp::run_bench({b}, opt);
  EXPECT_EQ(result.reports.size(), 6u);
  EXPECT_EQ(seen, 6u);

  std::size_t all_rows = 0;
  for (const auto& agg : result.aggregates) {
    std::size_t runs = 0, ok = 0;
    double sum = 0;
    for (const auto& r : result.reports) {
      if (r.strategy == agg.strategy && (agg.profile == "all" || r.profile == agg.profile)) {
        ++runs;
        ok += r.reproduced;
        sum += static_cast<double>(r.elapsed_ms);
      }
    }
    EXPECT_EQ(agg.runs, runs);
    EXPECT_EQ(agg.reproduced, ok);
    EXPECT_NEAR(agg.mean_elapsed_ms, sum / runs, 1e-9);
    all_rows += agg.profile == "all";
  }
  EXPECT_EQ(all_rows, 3u);

  const std::string csv = rp::bench_csv(result.reports);
  EXPECT_EQ(csv.rfind("scenario,profile,strategy,reproduced,elapsed_ms\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
  EXPECT_NE(csv.find("fixture_b,legacy,fixed:10,true,"), std::string::npos);
  EXPECT_EQ(rp::bench_csv(rp::run_bench({b}, opt).reports), csv);
}

TEST(Bench, DefaultStrategies) {
  const auto plain = rp::default_strategies(false);
  ASSERT_EQ(plain.size(), 5u);
  EXPECT_EQ(plain.back().label(), "oracle");
  EXPECT_EQ(rp::default_strategies(true).back().label(), "adaptive");
}
