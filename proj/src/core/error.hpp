#pragma once

#include <stdexcept>
#include <string>

namespace twistdeform {

enum class ErrorCode {
    InvalidArgument,
    DimensionMismatch,
    Parse,
    Singular,
    Domain,
    Numeric,
};

/* All library failures are thrown as Error; the stable code survives the
 * C boundary unchanged. */
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace twistdeform
