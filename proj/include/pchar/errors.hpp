#pragma once

#include <stdexcept>
#include <string>

namespace pchar {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Element-count cap or similar configured bound exceeded.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

/// Malformed input file; the message carries the line number.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

class DivisionByZero : public Error {
public:
    using Error::Error;
};

/// A class function that was required to be a character is not one.
class NotACharacter : public Error {
public:
    using Error::Error;
};

/// An exact identity that must hold failed; points at a bug, never at bad input.
class InternalError : public Error {
public:
    using Error::Error;
};

/// Wall-clock budget for a table computation ran out.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace pchar
