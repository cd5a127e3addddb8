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
#include <optional>
#include <string>
#include <vector>

#include "renderwait/imaging/frame.hpp"
#include "renderwait/renderstate/render_state.hpp"
#include "renderwait/renderstate/screencast.hpp"
#include "renderwait/sampling/hac.hpp"

namespace renderwait {

enum class Origin { Captured, Stitched, Blended, Injected };
enum class Split { Train, Val, Test };

std::string_view to_string(Origin o);
std::string_view to_string(Split s);
std::optional<Origin> parse_origin(std::string_view s);
std::optional<Split> parse_split(std::string_view s);

// Partial:Full target after augmentation.
inline constexpr double kDefaultPartialRatio = 1.38;

struct SplitRatios {
  int train = 8;
  int val = 1;
  int test = 1;
  void validate() const;
};

struct LabeledFrame {
  imaging::Frame frame;
  RenderLabel label = RenderLabel::FullyRendered;
  Origin origin = Origin::Captured;
};

struct ManifestEntry {
  std::string path;  // relative to the dataset directory
  RenderLabel label = RenderLabel::FullyRendered;
  Origin origin = Origin::Captured;
  Split split = Split::Train;
  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct DatasetManifest {
  std::uint64_t seed = 0;
  SplitRatios ratios;
  std::vector<ManifestEntry> entries;

  std::string to_json() const;
  static DatasetManifest from_json(const std::string& text);
  void save(const std::filesystem::path& path) const;
  static DatasetManifest load(const std::filesystem::path& path);
};

inline constexpr const char* kManifestFile = "manifest.json";

// In-memory dataset: items and their split assignment, parallel arrays.
struct Dataset {
  std::vector<LabeledFrame> items;
  std::vector<Split> splits;
  std::uint64_t seed = 0;
  SplitRatios ratios;

  std::size_t count(Split s) const;
  std::vector<const LabeledFrame*> select(Split s) const;
};

struct DatasetOptions {
  sampling::HacOptions hac;  // epsilon and similarity resolution
  double partial_ratio = kDefaultPartialRatio;
  SplitRatios ratios;
  std::uint64_t seed = 0;
};

// HAC sampling applied separately to each ground-truth group
// (fully rendered, transiting, loading) of one screencast. kept_indices, when
// given, receives the cast index of every returned frame.
std::vector<LabeledFrame> sample_screencast(const Screencast& cast, const sampling::HacOptions& hac,
                                           std::vector<std::size_t>* kept_indices = nullptr);

// Appends stitched/blended/injected Partial frames built from the fully
// rendered items until partial >= ratio * full.
void augment_to_ratio(std::vector<LabeledFrame>& items, double ratio, std::uint64_t seed);

// Stratified by label. Frames with identical content always share a split.
// Per stratum, val and test get floor(n * share) and train takes the rest.
std::vector<Split> assign_splits(const std::vector<LabeledFrame>& items, const SplitRatios& ratios,
                                 std::uint64_t seed);

// sample -> augment -> split. Throws std::invalid_argument on empty input.
Dataset build_dataset(const std::vector<Screencast>& casts, const DatasetOptions& options);

// Writes <origin>_<index>.pgm|ppm files plus manifest.json.
DatasetManifest write_dataset(const std::filesystem::path& dir, const Dataset& dataset);
Dataset read_dataset(const std::filesystem::path& dir);

}  // namespace renderwait
