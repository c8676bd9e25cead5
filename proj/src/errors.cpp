#include "shearwave/errors.hpp"

namespace shearwave {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NonPositiveModulus: return "NonPositiveModulus";
        case ErrorCode::NoBracket: return "NoBracket";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::SingularJacobian: return "SingularJacobian";
        case ErrorCode::StepFailure: return "StepFailure";
        case ErrorCode::InconsistentField: return "InconsistentField";
        case ErrorCode::DegenerateDirection: return "DegenerateDirection";
        case ErrorCode::ChartFailure: return "ChartFailure";
        case ErrorCode::DegenerateConstraint: return "DegenerateConstraint";
        case ErrorCode::CoincidenceOfSpeeds: return "CoincidenceOfSpeeds";
        case ErrorCode::HyperbolicityLoss: return "HyperbolicityLoss";
        case ErrorCode::BlowupDetected: return "BlowupDetected";
        case ErrorCode::InsufficientSnapshots: return "InsufficientSnapshots";
        case ErrorCode::NeitherOrientationDecays: return "NeitherOrientationDecays";
        case ErrorCode::OracleFailure: return "OracleFailure";
    }
    return "Unknown";
}

}  // namespace shearwave
