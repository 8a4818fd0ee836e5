#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace foveagaze {

enum class ErrorCode {
    InvalidArgument,
    EmptySequence,
    DecodeFailure,
    DimensionMismatch,
    FrameTooSmall,
    NoTexture,
    NoFoveaBoundary,
    RegionTooSmall,
    MissingTargets,
    AmbiguousTargets,
    DegenerateGrid,
    ZeroBaseline,
    NonPositiveLength,
    NegativeDistance,
    TraceTooShort,
    IncompleteRow,
    DegenerateVariance,
    ZeroVariance,
    LengthMismatch,
    OutOfRangeItem,
    EmptyInput,
    SpecOverflow,
    IoFailure,
    ConfigError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. `what()` starts with the code name
/// so diagnostics can be grepped for it.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail);

    ErrorCode code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

}  // namespace foveagaze
