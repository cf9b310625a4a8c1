// Copyright 2026 The mixgran Authors.
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

#include "mixgran/error.h"

namespace mixgran {
namespace {

std::string Format(ErrorCode code, const std::string& message,
                   std::optional<std::size_t> line) {
  std::string out(ErrorCodeName(code));
  if (line) out += " (line " + std::to_string(*line) + ")";
  out += ": ";
  out += message;
  return out;
}

}  // namespace

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidEncoding: return "InvalidEncoding";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kFormatError: return "FormatError";
    case ErrorCode::kDuplicateSurface: return "DuplicateSurface";
    case ErrorCode::kNonContiguousSpecials: return "NonContiguousSpecials";
    case ErrorCode::kTargetTooSmall: return "TargetTooSmall";
    case ErrorCode::kMissingRequiredChar: return "MissingRequiredChar";
    case ErrorCode::kTextTooLong: return "TextTooLong";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kUnknownId: return "UnknownId";
    case ErrorCode::kAlreadyHasSpecials: return "AlreadyHasSpecials";
    case ErrorCode::kMissingCharPiece: return "MissingCharPiece";
    case ErrorCode::kFingerprintMismatch: return "FingerprintMismatch";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> line)
    : std::runtime_error(Format(code, message, line)),
      code_(code),
      line_(line) {}

}  // namespace mixgran
