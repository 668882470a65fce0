// Copyright 2026 The bcattack Authors
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

#include "bcattack/error.h"

namespace bcattack {

const char *error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::kBallViolation:
            return "BallViolation";
        case ErrorCode::kInvalidDensity:
            return "InvalidDensity";
        case ErrorCode::kInternalMismatch:
            return "InternalMismatch";
        case ErrorCode::kNegativeEigenvalue:
            return "NegativeEigenvalue";
        case ErrorCode::kSupportViolation:
            return "SupportViolation";
        case ErrorCode::kSupportMismatch:
            return "SupportMismatch";
        case ErrorCode::kParentMismatch:
            return "ParentMismatch";
        case ErrorCode::kDegenerateStates:
            return "DegenerateStates";
        case ErrorCode::kUnsupportedSetSize:
            return "UnsupportedSetSize";
        case ErrorCode::kSpanViolation:
            return "SpanViolation";
        case ErrorCode::kInvalidArgument:
            return "InvalidArgument";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &what)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {
}

}  // namespace bcattack
