#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ratrec {

enum class ErrorKind {
    MalformedNumber,
    ZeroDenominator,
    ModeMismatch,
    DivisionByZero,
    ExactBlowup,
    DegenerateUndefined,
    FloatModeUnsupported,
    ForbiddenInput,
    RequiresANeqAlpha,
    RequiresAEqAlpha,
    BothDegenerate,
    WrongRegime,
    NoConvergenceWithinHorizon,
    ZeroLimit,
    ForbiddenInitialConditions,
    MalformedScenario,
    UnknownExample,
    TooFewPoints,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library. `index` carries the trajectory index
// for errors tied to a specific step (forbidden denominators, blowups).
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what, std::optional<long> index = std::nullopt);

    ErrorKind kind() const noexcept { return kind_; }
    std::optional<long> index() const noexcept { return index_; }

private:
    ErrorKind kind_;
    std::optional<long> index_;
};

}  // namespace ratrec
