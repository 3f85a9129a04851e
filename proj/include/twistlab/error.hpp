#ifndef TWISTLAB_ERROR_HPP
#define TWISTLAB_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace twistlab {

enum class ErrorCode {
    // poly
    InvalidPrime,
    ModulusMismatch,
    DegreeTooSmall,
    ZeroPolynomial,
    NotSquarefree,
    ParseError,
    // curves
    SingularCurve,
    GenusTooSmall,
    ZeroTwist,
    NonIntegralTransform,
    SingularTransform,
    BadPrime,
    // localsol
    ExcludedPrime,
    InvalidDepth,
    PreconditionFailed,
    // fiber
    NotAFiber,
    ShapeMismatch,
    UnknownType,
    // density
    BoundTooSmall,
    OddDegreeUnsupported,
    // anything that should never happen
    InvariantViolation,
};

/// Coarse grouping used by the CLI to pick an exit status.
enum class ErrorCategory { Validation, Precondition, Internal };

constexpr std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::InvalidPrime: return "InvalidPrime";
    case ErrorCode::ModulusMismatch: return "ModulusMismatch";
    case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SingularCurve: return "SingularCurve";
    case ErrorCode::GenusTooSmall: return "GenusTooSmall";
    case ErrorCode::ZeroTwist: return "ZeroTwist";
    case ErrorCode::NonIntegralTransform: return "NonIntegralTransform";
    case ErrorCode::SingularTransform: return "SingularTransform";
    case ErrorCode::BadPrime: return "BadPrime";
    case ErrorCode::ExcludedPrime: return "ExcludedPrime";
    case ErrorCode::InvalidDepth: return "InvalidDepth";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::NotAFiber: return "NotAFiber";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::UnknownType: return "UnknownType";
    case ErrorCode::BoundTooSmall: return "BoundTooSmall";
    case ErrorCode::OddDegreeUnsupported: return "OddDegreeUnsupported";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    }
    return "Unknown";
}

constexpr ErrorCategory category(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::SingularCurve:
    case ErrorCode::GenusTooSmall:
    case ErrorCode::ZeroTwist:
    case ErrorCode::ZeroPolynomial:
    case ErrorCode::DegreeTooSmall:
    case ErrorCode::NonIntegralTransform:
    case ErrorCode::SingularTransform:
        return ErrorCategory::Validation;
    case ErrorCode::InvariantViolation:
        return ErrorCategory::Internal;
    default:
        return ErrorCategory::Precondition;
    }
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace twistlab

#endif // TWISTLAB_ERROR_HPP
