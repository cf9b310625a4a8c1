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

#ifndef MIXGRAN_ERROR_H_
#define MIXGRAN_ERROR_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mixgran {

enum class ErrorCode {
  kInvalidEncoding,
  kIoFailure,
  kFormatError,
  kDuplicateSurface,
  kNonContiguousSpecials,
  kTargetTooSmall,
  kMissingRequiredChar,
  kTextTooLong,
  kEmptyCorpus,
  kUnknownId,
  kAlreadyHasSpecials,
  kMissingCharPiece,
  kFingerprintMismatch,
  kInvalidConfig,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception. `line` is the
// 1-based line number within the offending file when one applies.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> line = std::nullopt);

  ErrorCode code() const { return code_; }
  std::optional<std::size_t> line() const { return line_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
};

}  // namespace mixgran

#endif  // MIXGRAN_ERROR_H_
