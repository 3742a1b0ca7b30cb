#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace roughlab {

// Exit-code classes used by the command line front end.
enum class ErrorKind {
    InvalidArgument = 2,
    Numerical = 3,
    Io = 4,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error(ErrorKind::InvalidArgument, what) {}
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

// A coarse block whose fine increments are all zero.
class DegenerateBlock : public NumericalError {
public:
    explicit DegenerateBlock(std::size_t block);
    std::size_t block() const noexcept { return block_; }

private:
    std::size_t block_;
};

// The statistic curve never crosses its target on the H grid, or is flat.
class NoCrossing : public NumericalError {
public:
    NoCrossing(const std::string& what, double log_w_min, double log_w_max)
        : NumericalError(what), log_w_min_(log_w_min), log_w_max_(log_w_max) {}
    double log_w_min() const noexcept { return log_w_min_; }
    double log_w_max() const noexcept { return log_w_max_; }

private:
    double log_w_min_;
    double log_w_max_;
};

class InsufficientData : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegenerateSeries : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SimulationFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

class ParseError : public IoError {
public:
    ParseError(const std::string& file, std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

int exit_code(ErrorKind kind) noexcept;

}  // namespace roughlab
