#pragma once

#include <stdexcept>
#include <string>

namespace fefbound {

// Base for every error raised by the library. Callers that only care about
// "something went wrong" catch this; the CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shape mismatch, non-square operand, or a dimension below the minimum.
class DimensionError : public Error {
public:
    using Error::Error;
};

class HermiticityError : public Error {
public:
    using Error::Error;
};

// Rank-deficient operand where a full-rank one is required.
class SingularityError : public Error {
public:
    using Error::Error;
};

class UnitarityError : public Error {
public:
    using Error::Error;
};

// A real-valued parameter outside its admissible interval.
class ParameterError : public Error {
public:
    using Error::Error;
};

// A matrix that was required to be a density matrix is not one.
class PhysicalityError : public Error {
public:
    using Error::Error;
};

}  // namespace fefbound
