#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace eigcon {

enum class Errc {
    InvalidArgument,
    NonFinite,
    ConvergenceFailure,
    NotSimple,
    Degenerate,
    InfeasibleStart,
    ZeroGradient,
    InsufficientTrace,
    EmptyRegion,
    Parse,
};

const char* to_string(Errc code);

/// Library exception. `value()` carries the offending quantity when one exists
/// (the simplicity gap for NotSimple, the radicand for Degenerate, lambda for
/// InfeasibleStart); it is NaN otherwise.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what, double value = std::numeric_limits<double>::quiet_NaN())
        : std::runtime_error(what), code_(code), value_(value) {}

    Errc code() const noexcept { return code_; }
    double value() const noexcept { return value_; }

private:
    Errc code_;
    double value_;
};

}  // namespace eigcon
