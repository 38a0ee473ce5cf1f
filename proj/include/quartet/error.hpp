#pragma once

#include <stdexcept>

namespace quartet {

// Base class for everything this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad argument values: non-finite inputs, malformed grids, bad levels.
struct InvalidInput : Error {
    using Error::Error;
};

// Generator pair violations: even, non-coprime, or p <= q.
struct InvalidPair : InvalidInput {
    using InvalidInput::InvalidInput;
};

// State vector not normalized.
struct InvalidState : Error {
    using Error::Error;
};

// Degenerate coordinates: xi0 <= 0, nothing evolves.
struct DegenerateInput : Error {
    using Error::Error;
};

// Coordinates with xi3 != 0 have no ladder preimage.
struct NotInvertibleAsLadder : Error {
    using Error::Error;
};

// Coordinates off the cone, or xi0 < |xi2|.
struct InvalidCoordinates : Error {
    using Error::Error;
};

// Iterative solver did not converge.
struct NumericalFailure : Error {
    using Error::Error;
};

}  // namespace quartet
