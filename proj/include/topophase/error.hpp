// Copyright 2026 The topophase Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace topophase {

enum class ErrorKind {
    InvalidDimension,
    Normalization,
    DimensionMismatch,
    OutOfRange,
    InvalidArgument,
    NotDiagonal,
    UnsupportedDimension,
    NotSpecialUnitary,
    LowVisibility,
    DegenerateOverlap,
    TooFewPoints,
    Parse,
    Io,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidDimension: return "invalid-dimension";
        case ErrorKind::Normalization: return "normalization";
        case ErrorKind::DimensionMismatch: return "dimension-mismatch";
        case ErrorKind::OutOfRange: return "out-of-range";
        case ErrorKind::InvalidArgument: return "invalid-argument";
        case ErrorKind::NotDiagonal: return "not-diagonal";
        case ErrorKind::UnsupportedDimension: return "unsupported-dimension";
        case ErrorKind::NotSpecialUnitary: return "not-special-unitary";
        case ErrorKind::LowVisibility: return "low-visibility";
        case ErrorKind::DegenerateOverlap: return "degenerate-overlap";
        case ErrorKind::TooFewPoints: return "too-few-points";
        case ErrorKind::Parse: return "parse";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

/// Every failure raised by the library carries a kind so front ends can map
/// it to an exit status without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace topophase
