#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace seqdef {

// Invalid parameters and malformed inputs are reported with std::invalid_argument.
// Failures of the numerics themselves (no root, infeasible design, no giant
// component to destroy) derive from NumericalError.

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoRootError : public NumericalError {
public:
    NoRootError(const std::string& what, double lo, double hi, double f_lo, double f_hi);

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double residual_lo() const { return f_lo_; }
    double residual_hi() const { return f_hi_; }

private:
    double lo_, hi_, f_lo_, f_hi_;
};

class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& message);

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

}  // namespace seqdef
