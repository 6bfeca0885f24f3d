#pragma once

#include <stdexcept>
#include <string>

namespace admlab {

/// Numeric routine failed to converge (bracket search, quadrature escalation).
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Resolvent evaluated too close to an eigenvalue.
class spectrum_hit : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Operation not available for this input (e.g. conjugate of a linear-growth Young function).
class unsupported_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A theorem-backed inequality failed on a concrete trajectory.
class certificate_violation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace admlab
