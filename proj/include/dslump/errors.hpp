#ifndef DSLUMP_ERRORS_HPP
#define DSLUMP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dslump {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameter outside its admissible range (e.g. beta outside (0,1/3)).
struct DomainError : Error {
    using Error::Error;
};

// Iterative root finding failed to bracket or converge.
struct ConvergenceError : Error {
    using Error::Error;
};

// Array sizes inconsistent with the grid.
struct ShapeError : Error {
    using Error::Error;
};

struct UnknownSymbolError : Error {
    using Error::Error;
};

// Grid too coarse to represent the requested spectral feature.
struct ResolutionError : Error {
    using Error::Error;
};

// More than the allowed spectral mass removed by a hard cutoff.
struct TruncationError : Error {
    using Error::Error;
};

struct GridMismatchError : Error {
    using Error::Error;
};

// Ray through a field never meets the Nehari set at this resolution.
struct DegenerateRayError : Error {
    using Error::Error;
};

// Gradient descent escaped towards zero.
struct CollapseError : Error {
    using Error::Error;
};

// An internal consistency check failed; indicates a coding bug.
struct ValidationError : Error {
    using Error::Error;
};

}  // namespace dslump

#endif
