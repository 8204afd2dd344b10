#include "csurg/error.hpp"

namespace csurg {

const char* to_string(ErrorCategory category)
{
    switch (category) {
    case ErrorCategory::parse: return "parse";
    case ErrorCategory::validation: return "validation";
    case ErrorCategory::precondition: return "precondition";
    case ErrorCategory::undefined_invariant: return "undefined-invariant";
    case ErrorCategory::invariant_violation: return "invariant-violation";
    case ErrorCategory::budget: return "budget";
    case ErrorCategory::io: return "io";
    }
    return "unknown";
}

Error::Error(ErrorCategory category, std::string check, const std::string& message)
    : std::runtime_error(message), category_(category), check_(std::move(check))
{
}

namespace {

std::string with_position(const std::string& message, int line, int column)
{
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
}

}  // namespace

ParseError::ParseError(const std::string& message, int line, int column)
    : Error(ErrorCategory::parse, "parse", with_position(message, line, column)), line_(line), column_(column)
{
}

void fail_precondition(const std::string& check, const std::string& message)
{
    throw Error(ErrorCategory::precondition, check, check + ": " + message);
}

}  // namespace csurg
