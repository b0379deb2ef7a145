// Copyright 2026 The convsec Authors.
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

#include "convsec/error.h"

namespace convsec {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kDimensionMismatch:
      return "DimensionMismatch";
    case ErrorCode::kInvalidCost:
      return "InvalidCost";
    case ErrorCode::kCurveRangeExceeded:
      return "CurveRangeExceeded";
    case ErrorCode::kRequiresSeparable:
      return "RequiresSeparable";
    case ErrorCode::kNoGoodClassifier:
      return "NoGoodClassifier";
    case ErrorCode::kTooLarge:
      return "TooLarge";
    case ErrorCode::kUnknownId:
      return "UnknownId";
    case ErrorCode::kParse:
      return "Parse";
    case ErrorCode::kGuardViolation:
      return "GuardViolation";
    case ErrorCode::kInternal:
      return "Internal";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace convsec
