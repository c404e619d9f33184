// Copyright 2026 The vsel Authors
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

#include "vsel/model/container.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "vsel/error.hpp"

namespace vsel::model {

using nlohmann::json;

namespace {

constexpr char kMagic[8] = {'V', 'S', 'E', 'L', 'M', 'O', 'D', 'L'};

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_f64(std::string& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
}

class Reader {
 public:
  explicit Reader(const std::string& s) : s_(s) {}
  void need(std::size_t n, const char* what) {
    if (s_.size() - pos_ < n) throw SchemaError(std::string("model: truncated ") + what);
  }
  std::uint32_t u32(const char* what) {
    need(4, what);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(s_[pos_++])) << (8 * i);
    return v;
  }
  double f64(const char* what) {
    need(8, what);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(s_[pos_++])) << (8 * i);
    return std::bit_cast<double>(v);
  }
  std::string bytes(std::size_t n, const char* what) {
    need(n, what);
    std::string out = s_.substr(pos_, n);
    pos_ += n;
    return out;
  }
  bool done() const { return pos_ == s_.size(); }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
};

const char* encoding_name(PropertyEncoding e) {
  return e == PropertyEncoding::kScalar ? "scalar" : "onehot";
}

}  // namespace

json model_config_to_json(const ModelConfig& c) {
  json sets = json::array();
  for (auto es : graphio::kAllEdgeSets) {
    if (c.edge_sets[static_cast<std::size_t>(es)]) sets.push_back(std::string(graphio::edge_set_name(es)));
  }
  return json{{"vocab_size", c.vocab_size},
              {"portfolio_size", c.portfolio_size},
              {"num_gat_layers", c.num_gat_layers},
              {"edge_sets", sets},
              {"jumping_knowledge", c.jumping_knowledge},
              {"gat_width", c.gat_width},
              {"pool_hidden", c.pool_hidden},
              {"head_hidden", c.head_hidden},
              {"leaky_slope", c.leaky_slope},
              {"property_encoding", encoding_name(c.property_encoding)}};
}

ModelConfig model_config_from_json(const json& j, ModelConfig c) {
  auto fail = [](const std::string& m) { throw Error(ErrorCode::kConfig, "model." + m); };
  if (!j.is_object()) fail("config: expected an object");
  auto get_size = [&](const json& v, const std::string& key) -> std::size_t {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      fail(key + ": expected a non-negative integer");
    }
    return v.get<std::size_t>();
  };
  auto get_sizes = [&](const json& v, const std::string& key) {
    if (!v.is_array()) fail(key + ": expected an array");
    std::vector<std::size_t> out;
    for (const auto& x : v) out.push_back(get_size(x, key));
    return out;
  };
  for (const auto& [key, v] : j.items()) {
    if (key == "vocab_size") {
      c.vocab_size = get_size(v, key);
    } else if (key == "portfolio_size") {
      c.portfolio_size = get_size(v, key);
    } else if (key == "num_gat_layers") {
      c.num_gat_layers = get_size(v, key);
    } else if (key == "gat_width") {
      c.gat_width = get_size(v, key);
    } else if (key == "pool_hidden") {
      c.pool_hidden = get_sizes(v, key);
    } else if (key == "head_hidden") {
      c.head_hidden = get_sizes(v, key);
    } else if (key == "jumping_knowledge") {
      if (!v.is_boolean()) fail(key + ": expected a boolean");
      c.jumping_knowledge = v.get<bool>();
    } else if (key == "leaky_slope") {
      if (!v.is_number()) fail(key + ": expected a number");
      c.leaky_slope = v.get<double>();
    } else if (key == "property_encoding") {
      if (v == "scalar") {
        c.property_encoding = PropertyEncoding::kScalar;
      } else if (v == "onehot") {
        c.property_encoding = PropertyEncoding::kOneHot;
      } else {
        fail(key + ": expected \"scalar\" or \"onehot\"");
      }
    } else if (key == "edge_sets") {
      if (!v.is_array()) fail(key + ": expected an array of AST/ICFG/DFG");
      c.edge_sets = {false, false, false};
      for (const auto& s : v) {
        auto es = s.is_string() ? graphio::parse_edge_set(s.get<std::string>()) : std::nullopt;
        if (!es) fail(key + ": unknown edge set " + s.dump());
        c.edge_sets[static_cast<std::size_t>(*es)] = true;
      }
    } else {
      fail(key + ": unknown key");
    }
  }
  return c;
}

std::string serialize_model(const ModelParameters& params) {
  std::string out(kMagic, sizeof kMagic);
  put_u32(out, kContainerVersion);
  const std::string header = json{{"config", model_config_to_json(params.config)},
                                  {"portfolio", params.portfolio},
                                  {"vocab_fingerprint", params.vocab_fingerprint}}
                                 .dump();
  put_u32(out, static_cast<std::uint32_t>(header.size()));
  out += header;
  const auto blocks = params.named_tensors();
  put_u32(out, static_cast<std::uint32_t>(blocks.size()));
  for (const auto& [name, t] : blocks) {
    put_u32(out, static_cast<std::uint32_t>(name.size()));
    out += name;
    put_u32(out, static_cast<std::uint32_t>(t.rows()));
    put_u32(out, static_cast<std::uint32_t>(t.cols()));
    for (double v : t.value().values()) put_f64(out, v);
  }
  return out;
}

ModelParameters deserialize_model(const std::string& bytes) {
  Reader r(bytes);
  if (r.bytes(sizeof kMagic, "magic") != std::string(kMagic, sizeof kMagic)) {
    throw SchemaError("model: not a model container (bad magic)");
  }
  const std::uint32_t version = r.u32("version");
  if (version != kContainerVersion) {
    throw SchemaError("model: unsupported container version " + std::to_string(version));
  }
  const std::uint32_t header_len = r.u32("header length");
  json header;
  try {
    header = json::parse(r.bytes(header_len, "header"));
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("model: header is not JSON: ") + e.what());
  }
  ModelConfig config;
  std::vector<std::string> portfolio;
  std::string fingerprint;
  try {
    config = model_config_from_json(header.at("config"));
    portfolio = header.at("portfolio").get<std::vector<std::string>>();
    fingerprint = header.at("vocab_fingerprint").get<std::string>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("model: bad header: ") + e.what());
  } catch (const Error& e) {
    throw SchemaError(std::string("model: bad header: ") + e.what());
  }
  // Build the architecture, then overwrite every block.
  ModelParameters p = init_parameters(config, portfolio, fingerprint, 0);
  auto expected = p.named_tensors();
  const std::uint32_t count = r.u32("block count");
  if (count != expected.size()) {
    throw SchemaError("model: " + std::to_string(count) + " blocks, architecture needs " +
                      std::to_string(expected.size()));
  }
  for (auto& [name, t] : expected) {
    const std::string got = r.bytes(r.u32("block name length"), "block name");
    if (got != name) throw SchemaError("model: expected block '" + name + "', found '" + got + "'");
    const std::uint32_t rows = r.u32("block rows");
    const std::uint32_t cols = r.u32("block cols");
    if (rows != t.rows() || cols != t.cols()) {
      throw SchemaError("model: block '" + name + "' has shape " + std::to_string(rows) + "x" +
                        std::to_string(cols) + ", expected " + t.value().shape_string());
    }
    for (double& v : t.mutable_value().values()) v = r.f64("block values");
  }
  if (!r.done()) throw SchemaError("model: trailing bytes after last block");
  return p;
}

void save_model(const ModelParameters& params, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write model '" + path + "'");
  const std::string bytes = serialize_model(params);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed for model '" + path + "'");
}

ModelParameters load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open model '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return deserialize_model(ss.str());
}

}  // namespace vsel::model
