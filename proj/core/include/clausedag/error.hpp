#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace clausedag {

enum class ErrorKind {
    DuplicateVariable,
    OutOfRange,
    IncompatibleSet,
    IncompleteCover,
    SyntaxError,
    NotThreeCnf,
    EmptyInput,
    InvalidArity,
    TooLarge,
    LengthMismatch,
    InvalidArgument,
    Io,
};

[[nodiscard]] std::string_view to_string(ErrorKind kind) noexcept;

// Every library failure is reported through this type; kind() lets callers
// branch without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace clausedag
