#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace shearwave {

enum class ErrorCode {
    InvalidArgument,
    NonPositiveModulus,
    NoBracket,
    NoConvergence,
    DivisionByZero,
    SingularJacobian,
    StepFailure,
    InconsistentField,
    DegenerateDirection,
    ChartFailure,
    DegenerateConstraint,
    CoincidenceOfSpeeds,
    HyperbolicityLoss,
    BlowupDetected,
    InsufficientSnapshots,
    NeitherOrientationDecays,
    OracleFailure,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries a code and, where one exists,
/// the location in the evolution/space coordinates at which it happened.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what, std::string locus = {})
        : std::runtime_error(std::string(to_string(code)) + ": " + what),
          code_(code),
          locus_(std::move(locus)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& locus() const noexcept { return locus_; }

private:
    ErrorCode code_;
    std::string locus_;
};

}  // namespace shearwave
