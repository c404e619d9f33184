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

#include "vsel/error.hpp"

namespace vsel {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kLex: return "LexError";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kUnsupportedConstruct: return "UnsupportedConstruct";
    case ErrorCode::kGraphTooLarge: return "GraphTooLarge";
    case ErrorCode::kSchema: return "SchemaError";
    case ErrorCode::kIndex: return "IndexError";
    case ErrorCode::kShape: return "ShapeError";
    case ErrorCode::kNotScalar: return "NotScalar";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kEmptyGraph: return "EmptyGraph";
    case ErrorCode::kVocabMismatch: return "VocabMismatch";
    case ErrorCode::kEmptySplit: return "EmptySplit";
    case ErrorCode::kInvalidRanking: return "InvalidRanking";
    case ErrorCode::kNoEligibleInstances: return "NoEligibleInstances";
    case ErrorCode::kBadK: return "BadK";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

}  // namespace vsel
