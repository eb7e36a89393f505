/*
 * Copyright 2026 The Deep Random Lab Authors.
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

#include "deeprandom/error.h"

namespace deeprandom {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "invalid-input";
    case ErrorCode::kCapability: return "capability";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kInternal: return "internal";
    case ErrorCode::kThresholdInfeasible: return "threshold-infeasible";
    case ErrorCode::kNotMature: return "not-mature";
    case ErrorCode::kDispersionConstraint: return "dispersion-constraint";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kReconciliationFailed: return "reconciliation-failed";
    case ErrorCode::kUnknownCheck: return "unknown-check";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace deeprandom
