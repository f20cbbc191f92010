#pragma once

#include <stdexcept>
#include <string>

namespace epivote {

// Bad input from the caller: unknown candidate, malformed vote, ...
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An enumeration or expansion would exceed a configured cap.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A checked precondition of an operation does not hold.
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An imperative announcement whose formula is false at the point.
struct AnnouncementError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Syntax error in a formula or scenario, with a source location.
struct ParseError : std::runtime_error {
    int line;
    int column;

    ParseError(const std::string& msg, int line_, int column_)
        : std::runtime_error(msg + " (line " + std::to_string(line_) + ", column " +
                             std::to_string(column_) + ")"),
          line(line_),
          column(column_) {}
};

} // namespace epivote
