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
#include "renderwait/replay/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "renderwait/replay/recorder.hpp"

namespace renderwait::replay {

std::vector<WaitStrategy> default_strategies(bool with_adaptive) {
  std::vector<WaitStrategy> s{WaitStrategy::fixed(1), WaitStrategy::fixed(2), WaitStrategy::fixed(5),
                              WaitStrategy::fixed(10), WaitStrategy::oracle()};
  if (with_adaptive) s.push_back(WaitStrategy::adaptive());
  return s;
}

BenchResult run_bench(const std::vector<sim::Scenario>& scenarios, const BenchOptions& options) {
  if (scenarios.empty()) throw std::invalid_argument("bench needs at least one scenario");
  if (options.strategies.empty()) throw std::invalid_argument("bench needs at least one strategy");
  if (options.seeds.empty()) throw std::invalid_argument("bench needs at least one seed");
  BenchResult result;
  for (const sim::Scenario& sc : scenarios) {
    const EventScript script = record(sc, sc.profile(options.record_profile), options.record_seed);
    for (const sim::DeviceProfile& profile : sc.effective_profiles()) {
      for (const std::uint64_t seed : options.seeds) {
        for (const WaitStrategy& strategy : options.strategies) {
          ReplayReport r = replay(sc, script, profile, strategy, {seed, options.predictor});
          if (options.on_report) options.on_report(r);
          result.reports.push_back(std::move(r));
        }
      }
    }
  }
  result.aggregates = aggregate(result.reports);
  return result;
}

std::vector<Aggregate> aggregate(const std::vector<ReplayReport>& reports) {
  std::vector<Aggregate> rows;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  std::map<std::pair<std::string, std::string>, double> sums;
  auto add = [&](const std::string& profile, const ReplayReport& r) {
    const auto key = std::make_pair(profile, r.strategy);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, rows.size()).first;
      rows.push_back({profile, r.strategy});
    }
    Aggregate& a = rows[it->second];
    ++a.runs;
    a.reproduced += r.reproduced ? 1 : 0;
    sums[key] += static_cast<double>(r.elapsed_ms);
  };
  for (const ReplayReport& r : reports) add(r.profile, r);
  for (const ReplayReport& r : reports) add("all", r);
  for (Aggregate& a : rows) a.mean_elapsed_ms = sums[{a.profile, a.strategy}] / static_cast<double>(a.runs);
  return rows;
}

std::string bench_csv(const std::vector<ReplayReport>& reports) {
  std::ostringstream out;
  out << "scenario,profile,strategy,reproduced,elapsed_ms\n";
  for (const ReplayReport& r : reports) {
    out << r.scenario << ',' << r.profile << ',' << r.strategy << ',' << (r.reproduced ? "true" : "false") << ','
        << r.elapsed_ms << '\n';
  }
  return out.str();
}

std::string aggregate_table(const std::vector<Aggregate>& aggregates) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-10s %-10s %6s %8s %14s\n", "profile", "strategy", "runs", "repro%", "mean_ms");
  out << line;
  for (const Aggregate& a : aggregates) {
    std::snprintf(line, sizeof line, "%-10s %-10s %6zu %8.1f %14.1f\n", a.profile.c_str(), a.strategy.c_str(), a.runs,
                  100.0 * a.reproducibility(), a.mean_elapsed_ms);
    out << line;
  }
  return out.str();
}

std::vector<sim::Scenario> load_suite(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw std::runtime_error("suite directory not found: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw std::runtime_error("no scenario files in " + dir.string());
  std::vector<sim::Scenario> out;
  for (const auto& f : files) out.push_back(sim::load_scenario(f));
  return out;
}

}  // namespace renderwait::replay
