#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace schwartz {

// Syntax / structural problems in user input. `offset` is a byte position
// into the original text, or npos when the problem is not positional
// (overlapping pieces, gaps without blend, ...).
class ParseError : public std::runtime_error {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    ParseError(std::string message, std::size_t offset = npos)
        : std::runtime_error(offset == npos
                                 ? message
                                 : message + " at offset " + std::to_string(offset)),
          offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// Runtime evaluation failure: log of a nonpositive value, division by zero,
// sqrt of a negative value. Carries the offending subexpression.
class EvalError : public std::runtime_error {
public:
    EvalError(std::string message, std::string where)
        : std::runtime_error(message + " in `" + where + "`"), where_(std::move(where)) {}

    const std::string& where() const { return where_; }

private:
    std::string where_;
};

// An operation was called outside its contract (e.g. a witness builder for a
// condition that holds).
class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(std::string message) : std::runtime_error(std::move(message)) {}
};

} // namespace schwartz
