#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace sparsefmt {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Triplet or slice index outside the matrix extent.
class BoundsError : public Error {
public:
    using Error::Error;
};

// Invalid sizes, widths or cost constants.
class ConfigError : public Error {
public:
    using Error::Error;
};

class EmptyInputError : public Error {
public:
    using Error::Error;
};

class ShapeError : public Error {
public:
    using Error::Error;
};

// Encoded arrays disagree with their own metadata. `array()` names the
// offending array.
class CorruptionError : public Error {
public:
    CorruptionError(std::string array, const std::string& what)
        : Error("corrupt array '" + array + "': " + what), array_(std::move(array)) {}

    const std::string& array() const noexcept { return array_; }

private:
    std::string array_;
};

class UnsupportedFormatError : public Error {
public:
    using Error::Error;
};

// Matrix Market / config parse failure. `line()` is 1-based, 0 if unknown.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& detail)
        : Error(line ? "line " + std::to_string(line) + ": " + detail : detail), line_(line), detail_(detail) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t line_;
    std::string detail_;
};

class IoError : public Error {
public:
    using Error::Error;
};

// SpMV through a codec disagreed with the dense reference.
class VerificationError : public Error {
public:
    VerificationError(const std::string& what, std::size_t row, double max_rel_error)
        : Error(what), row_(row), max_rel_error_(max_rel_error) {}

    std::size_t row() const noexcept { return row_; }
    double max_rel_error() const noexcept { return max_rel_error_; }

private:
    std::size_t row_;
    double max_rel_error_;
};

}  // namespace sparsefmt
