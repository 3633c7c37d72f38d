#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chanspa
{
//! Argument outside the mathematical domain of an operation (e.g. gamma <= 1).
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

//! Caller violated a documented precondition.
class PreconditionError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

//! Numerical procedure did not reach its tolerance.
class ConvergenceError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Input data parsed but failed a physical sanity check.
class DataError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Malformed text input; carries the offending line (1-based, 0 if n/a).
class ParseError : public std::runtime_error
{
  public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")"
                                  : what)
        , message_(what)
        , line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }
    //! Message without the line suffix.
    std::string const& message() const noexcept { return message_; }

  private:
    std::string message_;
    std::size_t line_;
};

//! Internal inconsistency between objects that should have been built together.
class ConsistencyError : public std::logic_error
{
  public:
    using std::logic_error::logic_error;
};
} // namespace chanspa
