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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "renderwait/common/random.hpp"
#include "renderwait/replay/replayer.hpp"
#include "renderwait/sim/scenario.hpp"

namespace renderwait::replay {

// Recording uses its own latency stream so replays see fresh draws.
inline constexpr std::uint64_t kRecordSeedStream = 0x7ec;
inline std::uint64_t record_seed_for(std::uint64_t seed) { return mix_seed(seed, kRecordSeedStream); }

struct BenchOptions {
  std::vector<WaitStrategy> strategies;
  std::uint64_t record_seed = 0;
  std::vector<std::uint64_t> seeds{0};  // replay seeds
  std::string record_profile = "flagship";
  RenderPredictor predictor;
  std::function<void(const ReplayReport&)> on_report;
};

struct Aggregate {
  std::string profile;  // "all" for the cross-profile row
  std::string strategy;
  std::size_t runs = 0;
  std::size_t reproduced = 0;
  double mean_elapsed_ms = 0.0;

  double reproducibility() const { return runs ? static_cast<double>(reproduced) / runs : 0.0; }
};

struct BenchResult {
  std::vector<ReplayReport> reports;  // scenario-major, then profile, seed, strategy
  std::vector<Aggregate> aggregates;
};

// Default strategy list: fixed:1, fixed:2, fixed:5, fixed:10, oracle, plus
// adaptive when with_adaptive.
std::vector<WaitStrategy> default_strategies(bool with_adaptive);

BenchResult run_bench(const std::vector<sim::Scenario>& scenarios, const BenchOptions& options);

// Per (profile, strategy) plus "all" rows, in first-seen order.
std::vector<Aggregate> aggregate(const std::vector<ReplayReport>& reports);

// scenario,profile,strategy,reproduced,elapsed_ms
std::string bench_csv(const std::vector<ReplayReport>& reports);
std::string aggregate_table(const std::vector<Aggregate>& aggregates);

// All *.json files in dir, sorted by file name.
std::vector<sim::Scenario> load_suite(const std::filesystem::path& dir);

}  // namespace renderwait::replay
