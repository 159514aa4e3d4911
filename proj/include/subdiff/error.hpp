#pragma once

#include <stdexcept>
#include <string>

namespace subdiff {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// Result not representable as a finite double.
class OverflowError : public Error {
public:
    explicit OverflowError(const std::string& msg) : Error(msg) {}
};

/// A series, quadrature or iteration failed to reach its tolerance.
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

/// A configured work cap (rejection attempts, path length) was exceeded.
class BudgetError : public Error {
public:
    explicit BudgetError(const std::string& msg) : Error(msg) {}
};

/// A subordinator path does not reach the requested physical time.
class CoverageError : public Error {
public:
    explicit CoverageError(const std::string& msg) : Error(msg) {}
};

/// Inputs that must share a time grid do not.
class GridError : public Error {
public:
    explicit GridError(const std::string& msg) : Error(msg) {}
};

/// File could not be read or written.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

/// Bad configuration input. `line` is 0 when the value did not come from a file.
class ConfigError : public Error {
public:
    ConfigError(const std::string& msg, std::string field, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + field + ": " + msg
                         : field + ": " + msg),
          reason_(msg),
          field_(std::move(field)),
          line_(line) {}

    const std::string& reason() const noexcept { return reason_; }
    const std::string& field() const noexcept { return field_; }
    int line() const noexcept { return line_; }

private:
    std::string reason_;
    std::string field_;
    int line_;
};

}  // namespace subdiff
