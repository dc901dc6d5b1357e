#include "fvdsr/error.hpp"

namespace fvdsr {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NonpositiveMass: return "NonpositiveMass";
        case ErrorCode::NonpositiveFrequency: return "NonpositiveFrequency";
        case ErrorCode::WrongModelKind: return "WrongModelKind";
        case ErrorCode::NoRealBranch: return "NoRealBranch";
        case ErrorCode::NoBracket: return "NoBracket";
        case ErrorCode::InsufficientRange: return "InsufficientRange";
        case ErrorCode::NonPropagatingIncidence: return "NonPropagatingIncidence";
        case ErrorCode::MapInvalid: return "MapInvalid";
        case ErrorCode::GridTooCoarse: return "GridTooCoarse";
        case ErrorCode::GridTooNarrow: return "GridTooNarrow";
        case ErrorCode::StepSizeTooLarge: return "StepSizeTooLarge";
    }
    return "Unknown";
}

void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace fvdsr
