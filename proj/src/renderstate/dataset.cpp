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
#include "renderwait/renderstate/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "renderwait/augment/augment.hpp"
#include "renderwait/common/error.hpp"
#include "renderwait/common/random.hpp"
#include "renderwait/imaging/pnm.hpp"

namespace renderwait {

using nlohmann::json;

std::string_view to_string(Origin o) {
  switch (o) {
    case Origin::Captured: return "captured";
    case Origin::Stitched: return "stitched";
    case Origin::Blended: return "blended";
    case Origin::Injected: return "injected";
  }
  return "captured";
}

std::string_view to_string(Split s) {
  switch (s) {
    case Split::Train: return "train";
    case Split::Val: return "val";
    case Split::Test: return "test";
  }
  return "train";
}

std::optional<Origin> parse_origin(std::string_view s) {
  for (Origin o : {Origin::Captured, Origin::Stitched, Origin::Blended, Origin::Injected}) {
    if (to_string(o) == s) return o;
  }
  return std::nullopt;
}

std::optional<Split> parse_split(std::string_view s) {
  for (Split x : {Split::Train, Split::Val, Split::Test}) {
    if (to_string(x) == s) return x;
  }
  return std::nullopt;
}

void SplitRatios::validate() const {
  if (train <= 0 || val < 0 || test < 0) {
    throw std::invalid_argument("split ratios need a positive train share and non-negative val/test");
  }
}

std::string DatasetManifest::to_json() const {
  json entries_j = json::array();
  for (const ManifestEntry& e : entries) {
    entries_j.push_back({{"path", e.path},
                         {"label", to_string(e.label)},
                         {"origin", to_string(e.origin)},
                         {"split", to_string(e.split)}});
  }
  const json j = {{"seed", seed},
                  {"ratios", {{"train", ratios.train}, {"val", ratios.val}, {"test", ratios.test}}},
                  {"entries", entries_j}};
  return j.dump(2) + "\n";
}

DatasetManifest DatasetManifest::from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    DatasetManifest m;
    m.seed = j.at("seed").get<std::uint64_t>();
    const json& r = j.at("ratios");
    m.ratios = {r.at("train").get<int>(), r.at("val").get<int>(), r.at("test").get<int>()};
    for (const json& e : j.at("entries")) {
      const auto label = parse_label(e.at("label").get<std::string>());
      const auto origin = parse_origin(e.at("origin").get<std::string>());
      const auto split = parse_split(e.at("split").get<std::string>());
      if (!label || !origin || !split) throw FormatError("manifest entry has an unknown enum value");
      m.entries.push_back({e.at("path").get<std::string>(), *label, *origin, *split});
    }
    return m;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed dataset manifest: ") + e.what());
  }
}

void DatasetManifest::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json();
}

DatasetManifest DatasetManifest::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

std::size_t Dataset::count(Split s) const {
  return static_cast<std::size_t>(std::count(splits.begin(), splits.end(), s));
}

std::vector<const LabeledFrame*> Dataset::select(Split s) const {
  std::vector<const LabeledFrame*> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (splits[i] == s) out.push_back(&items[i]);
  }
  return out;
}

std::vector<LabeledFrame> sample_screencast(const Screencast& cast, const sampling::HacOptions& hac,
                                           std::vector<std::size_t>* kept_indices) {
  if (cast.frames.size() != cast.labels.size()) {
    throw std::invalid_argument("screencast frames and labels differ in length");
  }
  // Group order: fully rendered, transiting, loading.
  auto group_of = [](const RenderState& s) {
    if (s.label == RenderLabel::FullyRendered) return 0;
    return s.kind == PartialKind::Loading ? 2 : 1;
  };
  std::vector<LabeledFrame> out;
  for (int g = 0; g < 3; ++g) {
    std::vector<imaging::Frame> frames;
    std::vector<std::size_t> source;
    for (std::size_t i = 0; i < cast.frames.size(); ++i) {
      if (group_of(cast.labels[i]) == g) {
        frames.push_back(cast.frames[i]);
        source.push_back(i);
      }
    }
    if (frames.empty()) continue;
    const sampling::HacResult r = sampling::hac_sample_indices(frames, hac);
    for (std::size_t k : r.kept) {
      if (kept_indices) kept_indices->push_back(source[k]);
      out.push_back({frames[k], g == 0 ? RenderLabel::FullyRendered : RenderLabel::Partial,
                     Origin::Captured});
    }
  }
  return out;
}

void augment_to_ratio(std::vector<LabeledFrame>& items, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0)) throw std::invalid_argument("augmentation ratio must be positive");
  std::vector<std::size_t> full;
  std::size_t partial = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].label == RenderLabel::FullyRendered) {
      full.push_back(i);
    } else {
      ++partial;
    }
  }
  if (full.empty()) return;
  const auto target = static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(full.size()) - 1e-9));

  // Two-frame transforms need a partner of the same geometry and different content.
  auto partner = [&](std::size_t a, Rng& rng) -> std::optional<std::size_t> {
    const imaging::Frame& fa = items[a].frame;
    const std::uint64_t ha = fa.content_hash();
    for (int attempt = 0; attempt < 16; ++attempt) {
      const std::size_t b = full[rng.below(full.size())];
      if (b != a && items[b].frame.same_geometry(fa) && items[b].frame.content_hash() != ha) return b;
    }
    for (std::size_t b : full) {
      if (b != a && items[b].frame.same_geometry(fa) && items[b].frame.content_hash() != ha) return b;
    }
    return std::nullopt;
  };

  std::uint64_t counter = 0;
  while (partial < target) {
    const std::uint64_t item_seed = mix_seed(seed, counter);
    Rng rng(item_seed);
    auto kind = static_cast<augment::AugmentKind>(counter % 3);
    ++counter;
    const std::size_t a = full[rng.below(full.size())];
    const imaging::Frame fa = items[a].frame;
    std::optional<std::size_t> b;
    if (kind != augment::AugmentKind::LoadingInject) {
      b = partner(a, rng);
      if (!b) kind = augment::AugmentKind::LoadingInject;
    }
    const auto spec = augment::AugmentSpec::draw(kind, rng.next(), fa.width(), fa.height());
    const imaging::Frame& fb = b ? items[*b].frame : fa;
    augment::Augmented aug = augment::apply(spec, fa, fb);
    const Origin origin = kind == augment::AugmentKind::Stitch  ? Origin::Stitched
                          : kind == augment::AugmentKind::Blend ? Origin::Blended
                                                                : Origin::Injected;
    items.push_back({std::move(aug.frame), RenderLabel::Partial, origin});
    ++partial;
  }
}

std::vector<Split> assign_splits(const std::vector<LabeledFrame>& items, const SplitRatios& ratios,
                                 std::uint64_t seed) {
  ratios.validate();
  const int total_share = ratios.train + ratios.val + ratios.test;
  // Content groups in first-appearance order, keyed by hash.
  std::map<std::uint64_t, std::size_t> group_of_hash;
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto [it, inserted] = group_of_hash.try_emplace(items[i].frame.content_hash(), groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(i);
  }

  std::vector<Split> splits(items.size(), Split::Train);
  Rng rng(mix_seed(seed, 0x5b11));
  for (RenderLabel stratum : {RenderLabel::FullyRendered, RenderLabel::Partial}) {
    std::vector<std::size_t> ids;
    std::size_t n = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (items[groups[g].front()].label == stratum) {
        ids.push_back(g);
        n += groups[g].size();
      }
    }
    rng.shuffle(ids);
    const std::size_t want_test = n * static_cast<std::size_t>(ratios.test) / total_share;
    const std::size_t want_val = n * static_cast<std::size_t>(ratios.val) / total_share;
    std::size_t got_test = 0, got_val = 0;
    for (std::size_t g : ids) {
      const std::size_t size = groups[g].size();
      Split s = Split::Train;
      if (got_test + size <= want_test) {
        s = Split::Test;
        got_test += size;
      } else if (got_val + size <= want_val) {
        s = Split::Val;
        got_val += size;
      }
      for (std::size_t i : groups[g]) splits[i] = s;
    }
  }
  return splits;
}

Dataset build_dataset(const std::vector<Screencast>& casts, const DatasetOptions& options) {
  if (casts.empty()) throw std::invalid_argument("build_dataset needs at least one screencast");
  Dataset ds;
  ds.seed = options.seed;
  ds.ratios = options.ratios;
  for (const Screencast& cast : casts) {
    if (cast.frames.empty()) throw std::invalid_argument("build_dataset got an empty screencast");
    auto sampled = sample_screencast(cast, options.hac);
    std::move(sampled.begin(), sampled.end(), std::back_inserter(ds.items));
  }
  augment_to_ratio(ds.items, options.partial_ratio, mix_seed(options.seed, 0xa06));
  ds.splits = assign_splits(ds.items, options.ratios, options.seed);
  return ds;
}

DatasetManifest write_dataset(const std::filesystem::path& dir, const Dataset& dataset) {
  std::filesystem::create_directories(dir);
  DatasetManifest m;
  m.seed = dataset.seed;
  m.ratios = dataset.ratios;
  for (std::size_t i = 0; i < dataset.items.size(); ++i) {
    const LabeledFrame& item = dataset.items[i];
    char name[64];
    std::snprintf(name, sizeof name, "%s_%06zu.%s", std::string(to_string(item.origin)).c_str(), i,
                  item.frame.channels() == 1 ? "pgm" : "ppm");
    imaging::write_pnm(dir / name, item.frame);
    m.entries.push_back({name, item.label, item.origin, dataset.splits[i]});
  }
  m.save(dir / kManifestFile);
  return m;
}

Dataset read_dataset(const std::filesystem::path& dir) {
  const DatasetManifest m = DatasetManifest::load(dir / kManifestFile);
  Dataset ds;
  ds.seed = m.seed;
  ds.ratios = m.ratios;
  for (const ManifestEntry& e : m.entries) {
    ds.items.push_back({imaging::read_pnm(dir / e.path), e.label, e.origin});
    ds.splits.push_back(e.split);
  }
  return ds;
}

}  // namespace renderwait
