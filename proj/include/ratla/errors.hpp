#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ratla {

/// Base of every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input. `line()` is 1-based, 0 when no line applies.
class parse_error : public error {
public:
    explicit parse_error(const std::string& msg, std::size_t line = 0)
        : error(line == 0 ? msg : "line " + std::to_string(line) + ": " + msg), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class division_by_zero : public error {
public:
    division_by_zero() : error("division by zero") {}
};

/// Operand dimensions do not fit the operation.
class shape_error : public error {
public:
    using error::error;
};

class index_error : public error {
public:
    using error::error;
};

class invalid_operation : public error {
public:
    using error::error;
};

/// Argument outside the mathematical domain of the operation.
class domain_error : public error {
public:
    using error::error;
};

class not_an_eigenvalue : public error {
public:
    using error::error;
};

/// No eigenvalue admits an eigenvector with nonnegative entries.
class no_feasible_allocation : public error {
public:
    using error::error;
};

/// The answer exists only as an irrational number.
class exactness_unavailable : public error {
public:
    using error::error;
};

}  // namespace ratla
