#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fvdsr {

enum class ErrorCode {
    InvalidArgument,
    NonpositiveMass,
    NonpositiveFrequency,
    WrongModelKind,
    NoRealBranch,
    NoBracket,
    InsufficientRange,
    NonPropagatingIncidence,
    MapInvalid,
    GridTooCoarse,
    GridTooNarrow,
    StepSizeTooLarge,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Domain error raised by the numerical layer. The code is stable and
/// machine-readable; the message carries the offending values.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

inline void require_positive_mass(double m) {
    if (!(m > 0.0)) fail(ErrorCode::NonpositiveMass, "mass must be > 0, got " + std::to_string(m));
}

}  // namespace fvdsr
