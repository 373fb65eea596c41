#include "wavetrap/error.hpp"

namespace wavetrap {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "invalid-argument";
        case ErrorCode::SingularDenominator: return "singular-denominator";
        case ErrorCode::ForbiddenRegion: return "start-in-forbidden-region";
        case ErrorCode::NotPeriodic: return "not-periodic";
        case ErrorCode::InsufficientTail: return "insufficient-tail";
        case ErrorCode::PathologicalClass: return "pathological-class";
        case ErrorCode::BelowThreshold: return "below-N";
        case ErrorCode::OutOfWindow: return "out-of-window";
        case ErrorCode::NoTurningPoints: return "no-turning-points";
        case ErrorCode::BelowWell: return "below-well";
        case ErrorCode::MultiWell: return "multi-well";
        case ErrorCode::ComplexRoots: return "complex-roots";
        case ErrorCode::SearchFailed: return "search-failed";
    }
    return "unknown";
}

Error::Error(ErrorCode code, std::string module, const std::string& what)
    : std::runtime_error(module + ": " + std::string(to_string(code)) + ": " + what),
      code_(code),
      module_(std::move(module)) {}

void fail(ErrorCode code, std::string_view module, const std::string& what) {
    throw Error(code, std::string(module), what);
}

}  // namespace wavetrap
