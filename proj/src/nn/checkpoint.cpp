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
#include "renderwait/nn/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace renderwait::nn {

using nlohmann::json;

namespace {

constexpr char kMagic[4] = {'R', 'W', 'N', 'N'};

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint32_t get_u32(const std::string& in, std::size_t& pos) {
  if (in.size() - pos < 4) throw FormatError("checkpoint truncated");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  }
  pos += 4;
  return v;
}

void put_floats(std::string& out, const Tensor& t) {
  for (float f : t.data()) {
    std::uint32_t bits;
    std::memcpy(&bits, &f, sizeof bits);
    put_u32(out, bits);
  }
}

void get_floats(const std::string& in, std::size_t& pos, Tensor& t) {
  for (float& f : t.data()) {
    const std::uint32_t bits = get_u32(in, pos);
    std::memcpy(&f, &bits, sizeof f);
  }
}

json config_to_json(const NetConfig& c) {
  json blocks = json::array();
  for (const BlockSpec& b : c.blocks) blocks.push_back({{"out_channels", b.out_channels}, {"stride", b.stride}});
  return {{"input_width", c.input_width},   {"input_height", c.input_height},
          {"input_channels", c.input_channels}, {"stem_channels", c.stem_channels},
          {"expansion", c.expansion},       {"blocks", blocks},
          {"bn_momentum", c.bn_momentum},   {"bn_eps", c.bn_eps}};
}

NetConfig config_from_json(const json& j) {
  NetConfig c;
  c.input_width = j.at("input_width").get<std::size_t>();
  c.input_height = j.at("input_height").get<std::size_t>();
  c.input_channels = j.at("input_channels").get<std::size_t>();
  c.stem_channels = j.at("stem_channels").get<std::size_t>();
  c.expansion = j.at("expansion").get<std::size_t>();
  c.bn_momentum = j.at("bn_momentum").get<double>();
  c.bn_eps = j.at("bn_eps").get<double>();
  c.blocks.clear();
  for (const json& b : j.at("blocks")) {
    c.blocks.push_back({b.at("out_channels").get<std::size_t>(), b.at("stride").get<int>()});
  }
  return c;
}

json describe(const std::string& name, const Shape& shape) { return {{"name", name}, {"shape", shape}}; }

void check_entry(const json& entry, const std::string& name, const Shape& shape) {
  if (entry.at("name").get<std::string>() != name || entry.at("shape").get<Shape>() != shape) {
    throw FormatError("checkpoint tensor '" + entry.at("name").get<std::string>() +
                      "' does not match the network layout (expected '" + name + "' " +
                      shape_string(shape) + ")");
  }
}

}  // namespace

std::string save_checkpoint(Network& net) {
  json params = json::array();
  for (Parameter<float>* p : net.parameters()) params.push_back(describe(p->name, p->value.shape()));
  json buffers = json::array();
  for (const NamedBuffer<float>& b : net.buffers()) buffers.push_back(describe(b.name, b.tensor->shape()));
  const json manifest = {{"config", config_to_json(net.config())}, {"params", params}, {"buffers", buffers}};
  const std::string text = manifest.dump();

  std::string out(kMagic, sizeof kMagic);
  put_u32(out, kCheckpointVersion);
  put_u32(out, static_cast<std::uint32_t>(text.size()));
  out += text;
  for (Parameter<float>* p : net.parameters()) put_floats(out, p->value);
  for (const NamedBuffer<float>& b : net.buffers()) put_floats(out, *b.tensor);
  return out;
}

Network load_checkpoint(const std::string& bytes) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) {
    throw FormatError("not a renderwait checkpoint (bad magic)");
  }
  std::size_t pos = 4;
  const std::uint32_t version = get_u32(bytes, pos);
  if (version != kCheckpointVersion) {
    throw FormatError("unsupported checkpoint version " + std::to_string(version));
  }
  const std::uint32_t len = get_u32(bytes, pos);
  if (bytes.size() - pos < len) throw FormatError("checkpoint truncated in manifest");
  json manifest;
  try {
    manifest = json::parse(bytes.substr(pos, len));
  } catch (const json::exception& e) {
    throw FormatError(std::string("checkpoint manifest is not valid JSON: ") + e.what());
  }
  pos += len;

  try {
    Network net(config_from_json(manifest.at("config")));
    const auto params = net.parameters();
    const auto buffers = net.buffers();
    const json& pj = manifest.at("params");
    const json& bj = manifest.at("buffers");
    if (pj.size() != params.size() || bj.size() != buffers.size()) {
      throw FormatError("checkpoint tensor count does not match the network layout");
    }
    for (std::size_t i = 0; i < params.size(); ++i) check_entry(pj[i], params[i]->name, params[i]->value.shape());
    for (std::size_t i = 0; i < buffers.size(); ++i) check_entry(bj[i], buffers[i].name, buffers[i].tensor->shape());
    for (Parameter<float>* p : params) get_floats(bytes, pos, p->value);
    for (const NamedBuffer<float>& b : buffers) get_floats(bytes, pos, *b.tensor);
    if (pos != bytes.size()) throw FormatError("trailing bytes after checkpoint payload");
    return net;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed checkpoint manifest: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("checkpoint describes an invalid network: ") + e.what());
  }
}

void write_checkpoint(const std::filesystem::path& path, Network& net) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  const std::string bytes = save_checkpoint(net);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

Network read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_checkpoint(ss.str());
}

}  // namespace renderwait::nn
