#include "ratrec/error.hpp"

namespace ratrec {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::MalformedNumber: return "MalformedNumber";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::ModeMismatch: return "ModeMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ExactBlowup: return "ExactBlowup";
    case ErrorKind::DegenerateUndefined: return "DegenerateUndefined";
    case ErrorKind::FloatModeUnsupported: return "FloatModeUnsupported";
    case ErrorKind::ForbiddenInput: return "ForbiddenInput";
    case ErrorKind::RequiresANeqAlpha: return "RequiresANeqAlpha";
    case ErrorKind::RequiresAEqAlpha: return "RequiresAEqAlpha";
    case ErrorKind::BothDegenerate: return "BothDegenerate";
    case ErrorKind::WrongRegime: return "WrongRegime";
    case ErrorKind::NoConvergenceWithinHorizon: return "NoConvergenceWithinHorizon";
    case ErrorKind::ZeroLimit: return "ZeroLimit";
    case ErrorKind::ForbiddenInitialConditions: return "ForbiddenInitialConditions";
    case ErrorKind::MalformedScenario: return "MalformedScenario";
    case ErrorKind::UnknownExample: return "UnknownExample";
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what, std::optional<long> index)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), index_(index) {}

}  // namespace ratrec
