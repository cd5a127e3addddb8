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
#include "renderwait/cli/cli.hpp"

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "renderwait/imaging/pnm.hpp"
#include "renderwait/nn/checkpoint.hpp"
#include "renderwait/renderstate/classifier.hpp"
#include "renderwait/renderstate/dataset.hpp"
#include "renderwait/replay/bench.hpp"
#include "renderwait/replay/recorder.hpp"
#include "renderwait/replay/replayer.hpp"
#include "renderwait/sim/device.hpp"

namespace renderwait::cli {

namespace {

namespace fs = std::filesystem;

using nlohmann::json;

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

json metrics_json(const Metrics& m) {
  return {{"precision", m.precision}, {"recall", m.recall},     {"f1", m.f1},
          {"tp", m.confusion.tp},     {"fp", m.confusion.fp},   {"fn", m.confusion.fn},
          {"tn", m.confusion.tn},     {"precision_defined", m.precision_defined}};
}

replay::RenderPredictor predictor_for(const Classifier& clf) {
  return [&clf](const imaging::Frame& f) { return clf.predict(f).state.is_fully_rendered(); };
}

Dataset dataset_from_items(std::vector<LabeledFrame> items, std::uint64_t seed, const SplitRatios& ratios) {
  Dataset ds;
  ds.splits = assign_splits(items, ratios, seed);
  ds.items = std::move(items);
  ds.seed = seed;
  ds.ratios = ratios;
  return ds;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"renderwait: GUI record-and-replay with rendering-state aware waiting", "renderwait"};
  app.set_version_flag("--version", std::string("renderwait ") + kVersion);
  app.set_config("--config", "", "key=value configuration file (flags win)");
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Root random seed")->envname("RENDERWAIT_SEED");

  std::function<void()> action;

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Run a scenario with exact waits and export a labeled screencast");
  std::string sim_scenario, sim_profile = "flagship", sim_out;
  std::int64_t sim_interval = sim::CaptureOptions{}.frame_interval_ms;
  simulate->add_option("--scenario", sim_scenario, "Scenario JSON")->required()->check(CLI::ExistingFile);
  simulate->add_option("--profile", sim_profile, "Device profile");
  simulate->add_option("--out", sim_out, "Output directory")->required();
  simulate->add_option("--interval", sim_interval, "Frame interval in virtual ms")->check(CLI::PositiveNumber);
  simulate->callback([&] {
    action = [&] {
      const sim::Scenario sc = sim::load_scenario(sim_scenario);
      sim::CaptureOptions opt;
      opt.frame_interval_ms = sim_interval;
      const Screencast cast = sim::capture_screencast(sc, sc.profile(sim_profile), seed, opt);
      write_screencast(sim_out, cast);
      std::cerr << "wrote " << cast.frames.size() << " frames to " << sim_out << "\n";
    };
  });

  // dataset
  auto* dataset = app.add_subcommand("dataset", "Dataset construction");
  dataset->require_subcommand(1);
  double epsilon = sampling::kDefaultEpsilon;
  double ratio = kDefaultPartialRatio;

  auto* ds_sample = dataset->add_subcommand("sample", "HAC-sample a screencast into a dataset directory");
  std::string sample_in, sample_out;
  ds_sample->add_option("--in", sample_in, "Screencast directory")->required()->check(CLI::ExistingDirectory);
  ds_sample->add_option("--out", sample_out, "Output dataset directory")->required();
  ds_sample->add_option("--epsilon", epsilon, "Similarity threshold")->check(CLI::Range(0.0, 1.0));
  ds_sample->callback([&] {
    action = [&] {
      sampling::HacOptions hac;
      hac.epsilon = epsilon;
      const Screencast cast = read_screencast(sample_in);
      std::vector<std::size_t> kept_idx;
      std::vector<LabeledFrame> items = sample_screencast(cast, hac, &kept_idx);
      const Dataset ds = dataset_from_items(std::move(items), seed, {});
      write_dataset(sample_out, ds);
      std::vector<bool> kept_mask(cast.frames.size(), false);
      for (std::size_t i : kept_idx) kept_mask[i] = true;
      json kept = json::array(), discarded = json::array();
      for (std::size_t i : kept_idx) kept.push_back(imaging::frame_filename(cast.frames[i]));
      for (std::size_t i = 0; i < cast.frames.size(); ++i) {
        if (!kept_mask[i]) discarded.push_back(imaging::frame_filename(cast.frames[i]));
      }
      write_text(fs::path(sample_out) / "sampling.json",
                 json{{"epsilon", epsilon}, {"kept", kept}, {"discarded", discarded}}.dump(2) + "\n");
      std::cerr << "kept " << ds.items.size() << " of " << cast.frames.size() << " frames\n";
    };
  });

  auto* ds_augment = dataset->add_subcommand("augment", "Add synthetic partial frames to a dataset");
  std::string aug_in, aug_out;
  ds_augment->add_option("--in", aug_in, "Dataset directory")->required()->check(CLI::ExistingDirectory);
  ds_augment->add_option("--out", aug_out, "Output dataset directory")->required();
  ds_augment->add_option("--ratio", ratio, "Partial:Full target ratio")->check(CLI::PositiveNumber);
  ds_augment->callback([&] {
    action = [&] {
      Dataset in = read_dataset(aug_in);
      augment_to_ratio(in.items, ratio, mix_seed(seed, 0xa06));
      const Dataset ds = dataset_from_items(std::move(in.items), seed, in.ratios);
      write_dataset(aug_out, ds);
      std::cerr << "dataset now has " << ds.items.size() << " frames\n";
    };
  });

  auto* ds_build = dataset->add_subcommand("build", "Simulate, sample, augment and split in one step");
  std::string build_suite, build_out;
  std::vector<std::string> build_casts, build_profiles;
  std::int64_t build_interval = sim::CaptureOptions{}.frame_interval_ms;
  ds_build->add_option("--suite", build_suite, "Scenario directory to simulate")->check(CLI::ExistingDirectory);
  ds_build->add_option("--cast", build_casts, "Existing screencast directories")->check(CLI::ExistingDirectory);
  ds_build->add_option("--profile", build_profiles, "Restrict simulation to these profiles");
  ds_build->add_option("--interval", build_interval, "Frame interval in virtual ms")->check(CLI::PositiveNumber);
  ds_build->add_option("--out", build_out, "Output dataset directory")->required();
  ds_build->add_option("--epsilon", epsilon, "Similarity threshold")->check(CLI::Range(0.0, 1.0));
  ds_build->add_option("--ratio", ratio, "Partial:Full target ratio")->check(CLI::PositiveNumber);
  ds_build->callback([&] {
    action = [&] {
      if (build_suite.empty() && build_casts.empty()) throw CLI::RequiredError("--suite or --cast");
      std::vector<Screencast> casts;
      if (!build_suite.empty()) {
        sim::CaptureOptions opt;
        opt.frame_interval_ms = build_interval;
        casts = sim::capture_suite(replay::load_suite(build_suite), build_profiles, seed, opt);
      }
      for (const std::string& dir : build_casts) casts.push_back(read_screencast(dir));
      DatasetOptions opt;
      opt.hac.epsilon = epsilon;
      opt.partial_ratio = ratio;
      opt.seed = seed;
      const Dataset ds = build_dataset(casts, opt);
      write_dataset(build_out, ds);
      std::cerr << "dataset: " << ds.items.size() << " frames (train " << ds.count(Split::Train) << ", val "
                << ds.count(Split::Val) << ", test " << ds.count(Split::Test) << ")\n";
    };
  });

  // train
  auto* train = app.add_subcommand("train", "Train the rendering-state classifier");
  std::string train_data, train_out;
  TrainOptions topt;
  train->add_option("--dataset", train_data, "Dataset directory")->required()->check(CLI::ExistingDirectory);
  train->add_option("--out", train_out, "Checkpoint path")->required();
  train->add_option("--epochs", topt.epochs, "Training epochs")->check(CLI::PositiveNumber);
  train->add_option("--batch-size", topt.batch_size, "Mini-batch size")->check(CLI::Range(2, 4096));
  train->callback([&] {
    action = [&] {
      const Dataset ds = read_dataset(train_data);
      topt.seed = seed;
      topt.on_epoch = [](const EpochLog& e) {
        std::cerr << "epoch " << e.epoch << " lr " << e.learning_rate << " train_loss " << e.train_loss
                  << " val_loss " << e.val_loss << "\n";
      };
      TrainResult r = train_classifier(ds, topt);
      nn::write_checkpoint(train_out, r.best);
      std::cerr << "best epoch " << r.best_epoch << ", checkpoint " << train_out << "\n";
    };
  });

  // eval
  auto* eval = app.add_subcommand("eval", "Precision/recall/F1 of a checkpoint on a dataset split");
  std::string eval_data, eval_ckpt, eval_split = "test";
  eval->add_option("--dataset", eval_data, "Dataset directory")->required()->check(CLI::ExistingDirectory);
  eval->add_option("--checkpoint", eval_ckpt, "Checkpoint")->required()->check(CLI::ExistingFile);
  eval->add_option("--split", eval_split, "train, val or test")->check(CLI::IsMember({"train", "val", "test"}));
  eval->callback([&] {
    action = [&] {
      const Classifier clf = Classifier::load(eval_ckpt);
      const Metrics m = evaluate(clf, read_dataset(eval_data), *parse_split(eval_split));
      std::cout << metrics_json(m).dump(2) << "\n";
    };
  });

  // classify
  auto* classify = app.add_subcommand("classify", "Predict the rendering state of PNM frames");
  std::string cls_ckpt;
  std::vector<std::string> cls_frames;
  classify->add_option("--checkpoint", cls_ckpt, "Checkpoint")->required()->check(CLI::ExistingFile);
  classify->add_option("frames", cls_frames, "Frame files")->required()->check(CLI::ExistingFile);
  classify->callback([&] {
    action = [&] {
      const Classifier clf = Classifier::load(cls_ckpt);
      for (const std::string& f : cls_frames) {
        const Prediction p = clf.predict(imaging::read_pnm(f));
        std::cout << f << ',' << to_string(p.state.label) << ',' << p.confidence << "\n";
      }
    };
  });

  // record
  auto* rec = app.add_subcommand("record", "Record a scenario into an event script");
  std::string rec_scenario, rec_out, rec_profile = replay::kRecordProfile;
  rec->add_option("--scenario", rec_scenario, "Scenario JSON")->required()->check(CLI::ExistingFile);
  rec->add_option("--out", rec_out, "Event script path")->required();
  rec->add_option("--profile", rec_profile, "Recording device profile");
  rec->callback([&] {
    action = [&] {
      const sim::Scenario sc = sim::load_scenario(rec_scenario);
      replay::save_script(rec_out, replay::record(sc, sc.profile(rec_profile), seed));
    };
  });

  // replay
  auto* rep = app.add_subcommand("replay", "Replay an event script on a device profile");
  std::string rep_script, rep_scenario, rep_profile = "flagship", rep_strategy = "adaptive", rep_ckpt;
  std::int64_t poll = replay::kDefaultPollIntervalMs, max_wait = replay::kDefaultMaxWaitMs;
  rep->add_option("--script", rep_script, "Event script")->required()->check(CLI::ExistingFile);
  rep->add_option("--scenario", rep_scenario, "Scenario JSON the script was recorded on")
      ->required()
      ->check(CLI::ExistingFile);
  rep->add_option("--profile", rep_profile, "Device profile");
  rep->add_option("--strategy", rep_strategy, "adaptive, oracle or fixed:<k>");
  rep->add_option("--checkpoint", rep_ckpt, "Classifier checkpoint (adaptive)")->check(CLI::ExistingFile);
  rep->add_option("--poll-interval", poll, "Adaptive poll interval in ms")->check(CLI::PositiveNumber);
  rep->add_option("--max-wait", max_wait, "Adaptive per-event wait cap in ms")->check(CLI::PositiveNumber);
  rep->callback([&] {
    replay::WaitStrategy strategy;
    try {
      strategy = replay::parse_strategy(rep_strategy);
    } catch (const std::invalid_argument& e) {
      throw CLI::ValidationError("--strategy", e.what());
    }
    strategy.poll_interval_ms = poll;
    strategy.max_wait_ms = max_wait;
    if (strategy.kind == replay::StrategyKind::AdaptiveRender && rep_ckpt.empty()) {
      throw CLI::RequiredError("--checkpoint (needed by the adaptive strategy)");
    }
    action = [&, strategy] {
      const sim::Scenario sc = sim::load_scenario(rep_scenario);
      const replay::EventScript script = replay::load_script(rep_script);
      std::optional<Classifier> clf;
      replay::ReplayOptions opt{seed, {}};
      if (!rep_ckpt.empty()) {
        clf = Classifier::load(rep_ckpt);
        opt.predictor = predictor_for(*clf);
      }
      const replay::ReplayReport r = replay::replay(sc, script, sc.profile(rep_profile), strategy, opt);
      json waits = json::array();
      for (const replay::EventWait& w : r.events) {
        waits.push_back({{"wait_ms", w.wait_ms}, {"polls", w.polls}, {"fallback", w.fallback}, {"ok", w.dispatched_ok}});
      }
      const json out = {{"scenario", r.scenario}, {"profile", r.profile},       {"strategy", r.strategy},
                        {"reproduced", r.reproduced}, {"elapsed_ms", r.elapsed_ms}, {"events", waits},
                        {"failure", r.failure}};
      std::cout << out.dump(2) << "\n";
    };
  });

  // bench
  auto* bench = app.add_subcommand("bench", "Replay a scenario suite across profiles and strategies");
  std::string bench_suite, bench_out, bench_ckpt;
  std::vector<std::string> bench_strategies;
  bench->add_option("--suite", bench_suite, "Scenario directory")->required()->check(CLI::ExistingDirectory);
  bench->add_option("--out", bench_out, "CSV output (default: standard output)");
  bench->add_option("--checkpoint", bench_ckpt, "Classifier checkpoint; enables the adaptive strategy")
      ->check(CLI::ExistingFile);
  bench->add_option("--strategy", bench_strategies, "Strategies to run (default: all available)");
  bench->callback([&] {
    std::vector<replay::WaitStrategy> strategies;
    try {
      for (const std::string& s : bench_strategies) strategies.push_back(replay::parse_strategy(s));
    } catch (const std::invalid_argument& e) {
      throw CLI::ValidationError("--strategy", e.what());
    }
    if (strategies.empty()) strategies = replay::default_strategies(!bench_ckpt.empty());
    for (const auto& s : strategies) {
      if (s.kind == replay::StrategyKind::AdaptiveRender && bench_ckpt.empty()) {
        throw CLI::RequiredError("--checkpoint (needed by the adaptive strategy)");
      }
    }
    action = [&, strategies] {
      std::optional<Classifier> clf;
      replay::BenchOptions opt;
      opt.strategies = strategies;
      opt.record_seed = replay::record_seed_for(seed);
      opt.seeds = {seed};
      if (!bench_ckpt.empty()) {
        clf = Classifier::load(bench_ckpt);
        opt.predictor = predictor_for(*clf);
      }
      const replay::BenchResult r = replay::run_bench(replay::load_suite(bench_suite), opt);
      const std::string csv = replay::bench_csv(r.reports);
      if (bench_out.empty()) {
        std::cout << csv;
      } else {
        write_text(bench_out, csv);
      }
      std::cerr << replay::aggregate_table(r.aggregates);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << "Run with --help for usage.\n";
    return 2;
  }

  try {
    if (action) action();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace renderwait::cli
