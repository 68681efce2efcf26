#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polariton {

/// Base of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A parameter violates its documented range.
class InvalidParameter : public Error
{
public:
    using Error::Error;
};

/// The medium has zero cooperative frequency, so no dimensionless system exists.
class DegenerateMedium : public Error
{
public:
    using Error::Error;
};

/// A function was evaluated outside its domain (e.g. group velocity in the gap).
class DomainError : public Error
{
public:
    using Error::Error;
};

/// Non-finite values appeared in the field or medium state.
class PropagationDiverged : public Error
{
public:
    using Error::Error;
};

/// Field energy blew up during the march in zeta.
class InstabilityError : public Error
{
public:
    InstabilityError(std::size_t step, const std::string& what)
        : Error("step " + std::to_string(step) + ": " + what), step_(step)
    {
    }

    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

/// Malformed configuration input; line is 0 when not tied to a file line.
class ConfigError : public Error
{
public:
    ConfigError(std::size_t line, const std::string& what)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line)
    {
    }

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

} // namespace polariton
