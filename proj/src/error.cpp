#include "lambdat/error.hpp"

namespace lambdat {

std::string_view toString(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::ZeroTotal: return "ZeroTotal";
    case ErrorCode::NegativeCount: return "NegativeCount";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::TooFewCategories: return "TooFewCategories";
    case ErrorCode::BadOrder: return "BadOrder";
    case ErrorCode::DegenerateMarginal: return "DegenerateMarginal";
    case ErrorCode::DegenerateRMS: return "DegenerateRMS";
    case ErrorCode::BadAlpha: return "BadAlpha";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::BadRectangle: return "BadRectangle";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotRectangular: return "NotRectangular";
    }
    return "Unknown";
}

// 0 is success, 1 a failed verification, 2 a usage error; library errors
// start at 10 in enum order.
int exitStatus(ErrorCode code) noexcept {
    return 10 + static_cast<int>(code);
}

} // namespace lambdat
