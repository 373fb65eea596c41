#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wavetrap {

/// Failure categories raised by the library. Each maps to one documented
/// error of a public operation; the CLI turns any of them into exit status 1.
enum class ErrorCode {
    InvalidArgument,
    SingularDenominator,
    ForbiddenRegion,
    NotPeriodic,
    InsufficientTail,
    PathologicalClass,
    BelowThreshold,      // h(ξ1) requested with ξ1² < N
    OutOfWindow,
    NoTurningPoints,
    BelowWell,
    MultiWell,
    ComplexRoots,
    SearchFailed,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string module, const std::string& what);

    ErrorCode code() const noexcept { return code_; }
    const std::string& module() const noexcept { return module_; }

private:
    ErrorCode code_;
    std::string module_;
};

[[noreturn]] void fail(ErrorCode code, std::string_view module, const std::string& what);

inline void require(bool condition, std::string_view module, const std::string& what) {
    if (!condition)
        fail(ErrorCode::InvalidArgument, module, what);
}

}  // namespace wavetrap
