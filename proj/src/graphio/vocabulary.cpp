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

#include "vsel/graphio/vocabulary.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "vsel/error.hpp"

namespace vsel::graphio {

TokenVocabulary::TokenVocabulary() : TokenVocabulary(std::vector<std::string>{"Unknown"}) {}

TokenVocabulary::TokenVocabulary(std::vector<std::string> kinds) : kinds_(std::move(kinds)) {
  if (kinds_.empty() || kinds_[0] != "Unknown") {
    throw SchemaError("vocabulary: first entry must be 'Unknown'");
  }
  for (std::size_t i = 0; i < kinds_.size(); ++i) {
    if (kinds_[i].empty()) throw SchemaError("vocabulary: empty kind at line " + std::to_string(i + 1));
    if (!index_.emplace(kinds_[i], i).second) {
      throw SchemaError("vocabulary: duplicate kind '" + kinds_[i] + "'");
    }
  }
}

TokenVocabulary TokenVocabulary::from_manifest(std::string_view text) {
  std::vector<std::string> kinds;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    kinds.push_back(std::move(line));
    start = end + 1;
  }
  // A trailing newline is not an extra entry.
  while (!kinds.empty() && kinds.back().empty()) kinds.pop_back();
  return TokenVocabulary(std::move(kinds));
}

TokenVocabulary TokenVocabulary::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open vocabulary '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_manifest(ss.str());
}

std::string TokenVocabulary::to_manifest() const {
  std::string out;
  for (const auto& k : kinds_) {
    out += k;
    out += '\n';
  }
  return out;
}

const std::string& TokenVocabulary::name(std::size_t index) const {
  if (index >= kinds_.size()) {
    throw Error(ErrorCode::kIndex, "vocabulary index " + std::to_string(index) + " out of range");
  }
  return kinds_[index];
}

std::size_t TokenVocabulary::lookup(std::string_view kind, std::string_view lexeme) const {
  if (!lexeme.empty()) {
    std::string refined(kind);
    refined += ':';
    refined += lexeme;
    auto it = index_.find(refined);
    if (it != index_.end()) return it->second;
  }
  auto it = index_.find(std::string(kind));
  return it == index_.end() ? kUnknown : it->second;
}

std::string TokenVocabulary::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_manifest()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<double> encode_onehot(std::size_t kind_index, const TokenVocabulary& vocab) {
  if (kind_index >= vocab.size()) {
    throw Error(ErrorCode::kIndex, "one-hot index " + std::to_string(kind_index) +
                                       " out of range for |T|=" + std::to_string(vocab.size()));
  }
  std::vector<double> v(vocab.size(), 0.0);
  v[kind_index] = 1.0;
  return v;
}

}  // namespace vsel::graphio
