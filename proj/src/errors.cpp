#include "foveagaze/errors.hpp"

namespace foveagaze {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::EmptySequence: return "EmptySequence";
        case ErrorCode::DecodeFailure: return "DecodeFailure";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::FrameTooSmall: return "FrameTooSmall";
        case ErrorCode::NoTexture: return "NoTexture";
        case ErrorCode::NoFoveaBoundary: return "NoFoveaBoundary";
        case ErrorCode::RegionTooSmall: return "RegionTooSmall";
        case ErrorCode::MissingTargets: return "MissingTargets";
        case ErrorCode::AmbiguousTargets: return "AmbiguousTargets";
        case ErrorCode::DegenerateGrid: return "DegenerateGrid";
        case ErrorCode::ZeroBaseline: return "ZeroBaseline";
        case ErrorCode::NonPositiveLength: return "NonPositiveLength";
        case ErrorCode::NegativeDistance: return "NegativeDistance";
        case ErrorCode::TraceTooShort: return "TraceTooShort";
        case ErrorCode::IncompleteRow: return "IncompleteRow";
        case ErrorCode::DegenerateVariance: return "DegenerateVariance";
        case ErrorCode::ZeroVariance: return "ZeroVariance";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::OutOfRangeItem: return "OutOfRangeItem";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::SpecOverflow: return "SpecOverflow";
        case ErrorCode::IoFailure: return "IoFailure";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + (detail.empty() ? "" : ": " + detail)),
      code_(code),
      detail_(detail) {}

}  // namespace foveagaze
