// Copyright 2026-present the acorn-hybrid project
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace acorn {

enum class ErrorCode {
    kInvalidArgument,
    kUnknownNode,
    kDegreeOverflow,
    kSelfLoop,
    kSchemaMismatch,
    kEmptyPredicateSet,
    kEmptyDataset,
    kDimensionMismatch,
    kUnsupportedSchema,
    kInvalidK,
    kUnknownLabel,
    kUnreachableSelectivity,
    kGroundTruthMismatch,
    kBadMagic,
    kBadVersion,
    kBadChecksum,
    kTruncated,
    kInvariantViolation,
    kIoError,
    kParseError,
};

std::string_view
error_code_name(ErrorCode code);

/// Exception carrying a machine-checkable code. For kInvariantViolation the
/// `detail` field names the violated invariant ("dangling edge", ...).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::string detail = {})
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code),
          detail_(std::move(detail)) {
    }

    ErrorCode
    code() const noexcept {
        return code_;
    }

    const std::string&
    detail() const noexcept {
        return detail_;
    }

private:
    ErrorCode code_;
    std::string detail_;
};

}  // namespace acorn
