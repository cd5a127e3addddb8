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
#include "renderwait/renderstate/screencast.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "renderwait/common/error.hpp"
#include "renderwait/imaging/pnm.hpp"

namespace renderwait {

void write_screencast(const std::filesystem::path& dir, const Screencast& cast) {
  if (cast.frames.size() != cast.labels.size()) {
    throw std::invalid_argument("screencast frames and labels differ in length");
  }
  std::filesystem::create_directories(dir);
  std::ofstream labels(dir / kLabelsFile);
  if (!labels) throw std::runtime_error("cannot write " + (dir / kLabelsFile).string());
  for (std::size_t i = 0; i < cast.frames.size(); ++i) {
    const imaging::Frame& f = cast.frames[i];
    imaging::write_pnm(dir / imaging::frame_filename(f), f);
    const RenderState& s = cast.labels[i];
    labels << f.timestamp_ms() << ',' << to_string(s.label) << ',';
    if (s.kind) labels << to_string(*s.kind);
    labels << '\n';
  }
}

Screencast read_screencast(const std::filesystem::path& dir, bool allow_unlabeled) {
  if (!std::filesystem::is_directory(dir)) {
    throw std::invalid_argument("screencast directory not found: " + dir.string());
  }
  std::map<std::int64_t, RenderState> by_time;
  const auto labels_path = dir / kLabelsFile;
  const bool have_labels = std::filesystem::exists(labels_path);
  if (have_labels) {
    std::ifstream in(labels_path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      std::stringstream ss(line);
      std::string ts, label, kind;
      std::getline(ss, ts, ',');
      std::getline(ss, label, ',');
      std::getline(ss, kind);
      const auto l = parse_label(label);
      if (!l || ts.empty()) {
        throw FormatError(labels_path.string() + ":" + std::to_string(lineno) + ": bad label line");
      }
      RenderState s{*l, std::nullopt};
      if (*l == RenderLabel::Partial) {
        const auto k = parse_kind(kind);
        if (!k) throw FormatError(labels_path.string() + ":" + std::to_string(lineno) + ": bad kind");
        s.kind = *k;
      }
      by_time[std::stoll(ts)] = s;
    }
  } else if (!allow_unlabeled) {
    throw FormatError("screencast has no " + std::string(kLabelsFile) + ": " + dir.string());
  }

  Screencast cast;
  for (const auto& path : imaging::list_frames(dir)) {
    const std::int64_t ts = imaging::timestamp_from_filename(path.filename().string());
    RenderState s = RenderState::fully_rendered();
    if (have_labels) {
      const auto it = by_time.find(ts);
      if (it == by_time.end()) throw FormatError("no label for frame " + path.filename().string());
      s = it->second;
    }
    cast.frames.push_back(imaging::read_pnm(path, ts));
    cast.labels.push_back(s);
  }
  return cast;
}

}  // namespace renderwait
