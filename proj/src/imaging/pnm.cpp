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
#include "renderwait/imaging/pnm.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace renderwait::imaging {

std::string encode_pnm(const Frame& frame) {
  std::string out = (frame.channels() == 1 ? "P5\n" : "P6\n") + std::to_string(frame.width()) +
                    " " + std::to_string(frame.height()) + "\n255\n";
  const auto px = frame.pixels();
  out.append(reinterpret_cast<const char*>(px.data()), px.size());
  return out;
}

namespace {

// Reads one header token, skipping whitespace and '#' comments.
std::string next_token(const std::string& bytes, std::size_t& pos) {
  while (pos < bytes.size()) {
    if (bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
      ++pos;
    } else {
      break;
    }
  }
  const std::size_t start = pos;
  while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
  if (start == pos) throw FormatError("truncated pnm header");
  return bytes.substr(start, pos - start);
}

int parse_positive(const std::string& tok) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit) || tok.size() > 9) {
    throw FormatError("bad pnm header field '" + tok + "'");
  }
  return std::stoi(tok);
}

}  // namespace

Frame decode_pnm(const std::string& bytes, std::int64_t timestamp_ms) {
  std::size_t pos = 0;
  const std::string magic = next_token(bytes, pos);
  int channels = 0;
  if (magic == "P5") {
    channels = 1;
  } else if (magic == "P6") {
    channels = 3;
  } else {
    throw FormatError("unsupported pnm magic '" + magic + "'");
  }
  const int w = parse_positive(next_token(bytes, pos));
  const int h = parse_positive(next_token(bytes, pos));
  const int maxval = parse_positive(next_token(bytes, pos));
  if (maxval != 255) throw FormatError("only maxval 255 is supported");
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    throw FormatError("missing separator after pnm header");
  }
  ++pos;
  const std::size_t n = static_cast<std::size_t>(w) * h * channels;
  if (bytes.size() - pos < n) throw FormatError("truncated pnm raster");
  std::vector<std::uint8_t> px(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                               bytes.begin() + static_cast<std::ptrdiff_t>(pos + n));
  return Frame(w, h, channels, std::move(px), timestamp_ms);
}

void write_pnm(const std::filesystem::path& path, const Frame& frame) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  const std::string bytes = encode_pnm(frame);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

Frame read_pnm(const std::filesystem::path& path, std::int64_t timestamp_ms) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return decode_pnm(ss.str(), timestamp_ms);
}

std::string frame_filename(const Frame& frame) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "frame_%010lld.%s", static_cast<long long>(frame.timestamp_ms()),
                frame.channels() == 1 ? "pgm" : "ppm");
  return buf;
}

std::int64_t timestamp_from_filename(const std::string& name) {
  constexpr std::string_view prefix = "frame_";
  if (name.size() < prefix.size() + 5 || name.compare(0, prefix.size(), prefix) != 0) return -1;
  const std::size_t dot = name.rfind('.');
  if (dot == std::string::npos || dot <= prefix.size()) return -1;
  const std::string ext = name.substr(dot + 1);
  if (ext != "pgm" && ext != "ppm") return -1;
  const std::string digits = name.substr(prefix.size(), dot - prefix.size());
  if (digits.empty() || digits.size() > 18 ||
      !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
    return -1;
  }
  return std::stoll(digits);
}

std::vector<std::filesystem::path> list_frames(const std::filesystem::path& dir) {
  std::vector<std::pair<std::int64_t, std::filesystem::path>> found;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::int64_t ts = timestamp_from_filename(entry.path().filename().string());
    if (ts >= 0) found.emplace_back(ts, entry.path());
  }
  std::sort(found.begin(), found.end());
  std::vector<std::filesystem::path> out;
  out.reserve(found.size());
  for (auto& [ts, p] : found) out.push_back(std::move(p));
  return out;
}

}  // namespace renderwait::imaging
