#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lambdat {

/// Failure categories raised by the library. The CLI maps each one to a
/// distinct exit status and prints its name on standard error.
enum class ErrorCode {
    ZeroTotal,
    NegativeCount,
    NegativeEntry,
    NotNormalized,
    TooFewCategories,
    BadOrder,
    DegenerateMarginal,
    DegenerateRMS,
    BadAlpha,
    DomainError,
    BadRectangle,
    ParseError,
    NotRectangular,
};

std::string_view toString(ErrorCode code) noexcept;

/// Process exit status used by the command-line front end for `code`.
int exitStatus(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace lambdat
