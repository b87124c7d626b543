#ifndef TODA_ERRORS_HPP
#define TODA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace toda {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Structural input violations: non-finite entries, broken ordering,
// non-positive weights, malformed documents. Distinct from numeric
// failures so callers can map them to different exit codes.
class InvalidState : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public Error {
public:
    using Error::Error;
};

class NotSymmetric : public Error {
public:
    using Error::Error;
};

// Two eigenvalues (or two entries of a strictly ordered spectrum vector)
// closer than the configured gap tolerance.
class DegenerateSpectrum : public Error {
public:
    using Error::Error;
};

// An exponent passed the double-precision guard (default 700).
class Overflow : public Error {
public:
    using Error::Error;
};

class NonFiniteState : public Error {
public:
    using Error::Error;
};

class ResidualTooLarge : public Error {
public:
    using Error::Error;
};

// The triangular-decomposition route did not land on a tridiagonal
// matrix consistent with the reconstructed lattice state.
class GaugeMismatch : public Error {
public:
    using Error::Error;
};

class NearPole : public Error {
public:
    using Error::Error;
};

// Subset enumeration guard (n > 20).
class DimensionTooLarge : public Error {
public:
    using Error::Error;
};

// A subset-sum feature overflowed even after log-space evaluation.
class FeatureOverflow : public Error {
public:
    using Error::Error;
};

// The direct and the factorization-based evaluation of the same map
// disagree beyond tolerance; signals a convention bug, never expected
// on valid input.
class RouteMismatch : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

} // namespace toda

#endif
