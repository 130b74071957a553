#ifndef HOPF_ERRORS_HPP
#define HOPF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hopf {

// Base class for all domain errors thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// a = b = 0 in the power-sum equation; no root exists.
struct DegenerateEquation : Error {
    using Error::Error;
};

// Parameter or input violates a documented precondition (e.g. the
// modulus ordering, a zero point on the sphere, a non-positive h).
struct DomainError : Error {
    using Error::Error;
};

// Exact-mode declarations disagree with the floating parameters.
struct InconsistentExactData : Error {
    using Error::Error;
};

// A profile that must stay strictly positive fails the grid check.
struct NonPositiveProfile : DomainError {
    using DomainError::DomainError;
};

// The complex-coordinate basis produced a singular linear system.
struct SingularBasis : Error {
    using Error::Error;
};

// Diagonal-family operation invoked with moduli that differ.
struct ParamMismatch : Error {
    using Error::Error;
};

// Gram matrix condition number too large for a trustworthy solve.
struct IllConditioned : Error {
    using Error::Error;
};

// alpha^m = beta^n has no (certified) solution.
struct NotElliptic : Error {
    using Error::Error;
};

// Stereographic projection evaluated at its excluded pole.
struct PoleExcluded : Error {
    using Error::Error;
};

} // namespace hopf

#endif
