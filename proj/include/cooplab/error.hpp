// Copyright 2026 The cooplab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COOPLAB_ERROR_HPP_
#define COOPLAB_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace cooplab {

enum class ErrorCode {
  kDimensionMismatch,
  kNonFiniteEntry,
  kNegativeEpsilon,
  kUnsupportedClass,
  kDimensionTooSmall,
  kNotHarmonic,
  kPreconditionViolated,
  kIndexOutOfRange,
  kNumericalStall,
  kInsufficientPathData,
  kMembershipViolation,
  kBracketInvalid,
  kUnknownName,
  kParseError,
  kInvalidArgument,
};

const char* ErrorCodeName(ErrorCode code);

// All library failures surface as this exception type; `code()` tells them
// apart without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cooplab

#endif  // COOPLAB_ERROR_HPP_
