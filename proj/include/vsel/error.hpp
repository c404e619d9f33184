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
#include <stdexcept>
#include <string>

namespace vsel {

// Stable error categories. The numeric values are mirrored by vsel_status in
// the C API, so never renumber.
enum class ErrorCode : int {
  kLex = 1,
  kParse = 2,
  kUnsupportedConstruct = 3,
  kGraphTooLarge = 4,
  kSchema = 5,
  kIndex = 6,
  kShape = 7,
  kNotScalar = 8,
  kLengthMismatch = 9,
  kEmptyGraph = 10,
  kVocabMismatch = 11,
  kEmptySplit = 12,
  kInvalidRanking = 13,
  kNoEligibleInstances = 14,
  kBadK = 15,
  kIo = 16,
  kConfig = 17,
  kInvalidArgument = 18,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Source position carried by lexer and parser diagnostics (1-based).
struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

class LexError : public Error {
 public:
  LexError(SourcePos pos, const std::string& msg)
      : Error(ErrorCode::kLex, std::to_string(pos.line) + ":" +
                                   std::to_string(pos.column) + ": " + msg),
        pos_(pos) {}
  SourcePos pos() const noexcept { return pos_; }

 private:
  SourcePos pos_;
};

class ParseError : public Error {
 public:
  ParseError(SourcePos pos, const std::string& expected,
             const std::string& found)
      : Error(ErrorCode::kParse, std::to_string(pos.line) + ":" +
                                     std::to_string(pos.column) +
                                     ": expected " + expected + ", found " +
                                     found),
        pos_(pos),
        expected_(expected),
        found_(found) {}
  SourcePos pos() const noexcept { return pos_; }
  const std::string& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  SourcePos pos_;
  std::string expected_;
  std::string found_;
};

class UnsupportedConstruct : public Error {
 public:
  UnsupportedConstruct(SourcePos pos, const std::string& construct)
      : Error(ErrorCode::kUnsupportedConstruct,
              std::to_string(pos.line) + ":" + std::to_string(pos.column) +
                  ": unsupported construct '" + construct + "'"),
        construct_(construct) {}
  const std::string& construct() const noexcept { return construct_; }

 private:
  std::string construct_;
};

class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& msg) : Error(ErrorCode::kSchema, msg) {}
};

class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& msg) : Error(ErrorCode::kShape, msg) {}
};

}  // namespace vsel
