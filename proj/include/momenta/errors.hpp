#ifndef MOMENTA_ERRORS_HPP
#define MOMENTA_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace momenta {

// Base for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input bytes or values (files, rows, series). CLI maps these to exit 3.
class DataError : public Error {
public:
    using Error::Error;
};

// Malformed header line.
class FormatError : public DataError {
public:
    using DataError::DataError;
};

// A single row failed validation; carries the 1-based line number.
class RowError : public DataError {
public:
    RowError(std::size_t line, const std::string& what)
        : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Timestamps out of order.
class SequenceError : public DataError {
public:
    using DataError::DataError;
};

// Argument outside an operation's domain.
class DomainError : public Error {
public:
    using Error::Error;
};

// Fewer samples/points than the operation needs.
class InsufficientDataError : public DataError {
public:
    using DataError::DataError;
};

// Constant column/series where variation is required.
class DegenerateInputError : public DataError {
public:
    using DataError::DataError;
};

}  // namespace momenta

#endif
