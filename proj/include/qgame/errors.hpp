#pragma once

#include <stdexcept>
#include <string>

namespace qgame {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Operands have incompatible or unexpected dimensions.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// A matrix required to be Hermitian fails the entrywise check.
class NonHermitian : public Error {
public:
    using Error::Error;
};

// An expectation value came out with a non-negligible imaginary part.
// This signals an internal construction bug, not bad user input.
class ImaginaryResidue : public Error {
public:
    using Error::Error;
};

// Operation defined only for two-strategy (n = 2) games.
class UnsupportedDimension : public Error {
public:
    using Error::Error;
};

// A probability vector is not a valid distribution.
class InvalidDistribution : public Error {
public:
    using Error::Error;
};

// Game fails the symmetry requirement B = SAS.
class NotSymmetricGame : public Error {
public:
    using Error::Error;
};

// Game fails the T-symmetry requirement B = TAT.
class NotTSymmetricGame : public Error {
public:
    using Error::Error;
};

// Scalar input outside its documented domain (non-finite, bad range, ...).
class InvalidParameter : public Error {
public:
    using Error::Error;
};

}  // namespace qgame
