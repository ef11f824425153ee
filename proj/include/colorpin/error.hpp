#pragma once

#include <stdexcept>
#include <string>

namespace colorpin {

enum class ErrorCode {
    invalid_argument,
    unknown_symbol,
    unknown_user,
    conflict,
    session_state,
    incomplete_session,
    ceiling_exceeded,
    invalid_token,
    locked_out,
    io,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries a machine-readable code so the
/// service layer can map it onto a wire status without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace colorpin
