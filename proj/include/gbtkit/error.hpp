/*
 * Copyright 2026 The gbtkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GBTKIT_ERROR_HPP_
#define GBTKIT_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace gbtkit {

// Every domain failure raised by the library carries one of these codes.
enum class ErrorCode {
  kZeroPolynomial,
  kNonConvergence,
  kDegenerateMap,
  kConjugateViolation,
  kImproperTransferFunction,
  kParameterOutOfRange,
  kNyquistExceeded,
  kPoleOfMap,
  kEvaluationAtPole,
  kInvalidScenario,
  kDegenerateScenario,
  kConstraintViolation,
  kNoCrossing,
  kUnstablePlant,
  kParseError,
};

constexpr std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kDegenerateMap: return "DegenerateMap";
    case ErrorCode::kConjugateViolation: return "ConjugateViolation";
    case ErrorCode::kImproperTransferFunction: return "ImproperTransferFunction";
    case ErrorCode::kParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::kNyquistExceeded: return "NyquistExceeded";
    case ErrorCode::kPoleOfMap: return "PoleOfMap";
    case ErrorCode::kEvaluationAtPole: return "EvaluationAtPole";
    case ErrorCode::kInvalidScenario: return "InvalidScenario";
    case ErrorCode::kDegenerateScenario: return "DegenerateScenario";
    case ErrorCode::kConstraintViolation: return "ConstraintViolation";
    case ErrorCode::kNoCrossing: return "NoCrossing";
    case ErrorCode::kUnstablePlant: return "UnstablePlant";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gbtkit

#endif  // GBTKIT_ERROR_HPP_
