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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vsel::graphio {

/// Ordered set of token kinds. Index 0 is always "Unknown".
///
/// Entries are either a bare node kind ("CallExpr") or a kind refined by its
/// lexeme ("CallExpr:__VERIFIER_error", "BinaryOperator:!="). Lookup prefers
/// the refined entry, then the bare kind, then Unknown.
class TokenVocabulary {
 public:
  static constexpr std::size_t kUnknown = 0;

  TokenVocabulary();  // just Unknown
  explicit TokenVocabulary(std::vector<std::string> kinds);

  /// Manifest: one kind per line, line number - 1 = index, first line Unknown.
  static TokenVocabulary from_manifest(std::string_view text);
  static TokenVocabulary load(const std::string& path);
  std::string to_manifest() const;

  std::size_t size() const { return kinds_.size(); }
  const std::string& name(std::size_t index) const;
  const std::vector<std::string>& kinds() const { return kinds_; }

  std::size_t lookup(std::string_view kind, std::string_view lexeme = {}) const;

  /// 64-bit FNV-1a over the manifest text, as 16 lowercase hex digits.
  std::string fingerprint() const;

  friend bool operator==(const TokenVocabulary& a, const TokenVocabulary& b) {
    return a.kinds_ == b.kinds_;
  }

 private:
  std::vector<std::string> kinds_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// One-hot row of length |T|; throws IndexError (ErrorCode::kIndex) when
/// kind_index is out of range.
std::vector<double> encode_onehot(std::size_t kind_index, const TokenVocabulary& vocab);

}  // namespace vsel::graphio
