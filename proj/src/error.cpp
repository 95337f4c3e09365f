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

#include "acorn/error.h"

namespace acorn {

std::string_view
error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::kInvalidArgument:
            return "InvalidArgument";
        case ErrorCode::kUnknownNode:
            return "UnknownNode";
        case ErrorCode::kDegreeOverflow:
            return "DegreeOverflow";
        case ErrorCode::kSelfLoop:
            return "SelfLoop";
        case ErrorCode::kSchemaMismatch:
            return "SchemaMismatch";
        case ErrorCode::kEmptyPredicateSet:
            return "EmptyPredicateSet";
        case ErrorCode::kEmptyDataset:
            return "EmptyDataset";
        case ErrorCode::kDimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::kUnsupportedSchema:
            return "UnsupportedSchema";
        case ErrorCode::kInvalidK:
            return "InvalidK";
        case ErrorCode::kUnknownLabel:
            return "UnknownLabel";
        case ErrorCode::kUnreachableSelectivity:
            return "UnreachableSelectivity";
        case ErrorCode::kGroundTruthMismatch:
            return "GroundTruthMismatch";
        case ErrorCode::kBadMagic:
            return "BadMagic";
        case ErrorCode::kBadVersion:
            return "BadVersion";
        case ErrorCode::kBadChecksum:
            return "BadChecksum";
        case ErrorCode::kTruncated:
            return "Truncated";
        case ErrorCode::kInvariantViolation:
            return "InvariantViolation";
        case ErrorCode::kIoError:
            return "IoError";
        case ErrorCode::kParseError:
            return "ParseError";
    }
    return "Unknown";
}

}  // namespace acorn
