#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace gl3 {

// Invalid mathematical input (non-coprime arguments, composite moduli, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A computation ran out of its node/term budget. Carries the best value
// obtained so far so that callers can still report something.
class ResourceError : public std::runtime_error {
public:
    ResourceError(const std::string& what, std::complex<double> best = {}, double err = -1.0)
        : std::runtime_error(what), best_estimate(best), error_estimate(err) {}
    std::complex<double> best_estimate;
    double error_estimate;
};

class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CalibrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace gl3
