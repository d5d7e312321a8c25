#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cuntzlab {

enum class ErrorCode {
    EmptyWord,
    AlphabetMismatch,
    InvalidLetter,
    NotUnit,
    NotUnitary,
    NotPrefixFree,
    Inconsistent,
    TailNotCertified,
    ValidationFailed,
    NotInvariant,
    NotInCatalog,
    SchemaError,
    GateFailed,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace cuntzlab
