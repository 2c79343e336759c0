#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nrt {

enum class Errc {
    not_prime_power,
    too_large,
    division_by_zero,
    field_mismatch,
    dimension_mismatch,
    space_mismatch,
    zero_vector,
    zero_code,
    parse_error,
    range_error,
    header_error,
    invalid_argument,
};

inline const char* to_string(Errc code) {
    switch (code) {
        case Errc::not_prime_power: return "NotPrimePower";
        case Errc::too_large: return "TooLarge";
        case Errc::division_by_zero: return "DivisionByZero";
        case Errc::field_mismatch: return "FieldMismatch";
        case Errc::dimension_mismatch: return "DimensionMismatch";
        case Errc::space_mismatch: return "SpaceMismatch";
        case Errc::zero_vector: return "ZeroVector";
        case Errc::zero_code: return "ZeroCode";
        case Errc::parse_error: return "ParseError";
        case Errc::range_error: return "RangeError";
        case Errc::header_error: return "HeaderError";
        case Errc::invalid_argument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Base exception for every failure reported by the library.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

/// A failure while reading a text input, with a 1-based position.
class ParseError : public Error {
public:
    ParseError(Errc code, std::size_t line, std::size_t column, const std::string& what)
        : Error(code, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace nrt
