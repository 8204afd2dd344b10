#pragma once

#include <stdexcept>
#include <string>

namespace csurg {

/// Broad failure categories; the CLI maps each to its own exit status.
enum class ErrorCategory {
    parse,
    validation,
    precondition,
    undefined_invariant,
    invariant_violation,
    budget,
    io,
};

const char* to_string(ErrorCategory category);

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, std::string check, const std::string& message);

    ErrorCategory category() const noexcept { return category_; }

    /// Short machine-readable name of the failed check, e.g. "pushoff.tb".
    const std::string& check() const noexcept { return check_; }

private:
    ErrorCategory category_;
    std::string check_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, int line, int column);

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

[[noreturn]] void fail_precondition(const std::string& check, const std::string& message);

}  // namespace csurg
