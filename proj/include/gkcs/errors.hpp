#pragma once

#include <stdexcept>
#include <string>

namespace gkcs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument sits on (or within tolerance of) a pole of Gamma or of a series denominator.
class PoleError : public Error {
public:
    using Error::Error;
};

/// A series or quadrature exhausted its term/subdivision budget.
class NonConvergence : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of the routine.
class DomainError : public Error {
public:
    using Error::Error;
};

class UnsupportedOrder : public Error {
public:
    using Error::Error;
};

/// Two states of different class, fixed index or layer parameters were combined.
class ClassMismatch : public Error {
public:
    using Error::Error;
};

/// The operation has no meaning for the requested coherent-state class.
class UnsupportedClass : public Error {
public:
    using Error::Error;
};

/// Phase averaging needs distinct energies, and the spectrum slice has collisions.
class DegenerateSpectrum : public Error {
public:
    using Error::Error;
};

}  // namespace gkcs
