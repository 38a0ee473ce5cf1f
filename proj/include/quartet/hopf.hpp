#pragma once

// Projective map from the four couplings to cone coordinates
// (xi0, xi1, xi2, xi3) with xi0^2 = xi1^2 + xi2^2 + xi3^2, and the
// inverse restricted to ladder configurations (v14 = 0, xi3 = 0).

#include <cmath>

#include "quartet/error.hpp"
#include "quartet/hamiltonian.hpp"

namespace quartet {

struct HopfCoordinates {
    double xi0 = 0.0;
    double xi1 = 0.0;
    double xi2 = 0.0;
    double xi3 = 0.0;
};

inline HopfCoordinates hopf_map(const CouplingSet& c) {
    c.validate();
    HopfCoordinates x;
    x.xi0 = 0.5 * (c.v12 * c.v12 + c.v14 * c.v14 + c.v23 * c.v23 + c.v34 * c.v34);
    x.xi1 = c.v12 * c.v23 + c.v14 * c.v34;
    x.xi2 = c.v12 * c.v34 - c.v23 * c.v14;
    x.xi3 = 0.5 * (c.v12 * c.v12 + c.v14 * c.v14 - c.v23 * c.v23 - c.v34 * c.v34);
    return x;
}

// Signed residual of the cone identity, normalized so it stays
// meaningful for both tiny and large coupling scales.
inline double cone_residual(const HopfCoordinates& x) {
    const double lhs = x.xi0 * x.xi0;
    const double rhs = x.xi1 * x.xi1 + x.xi2 * x.xi2 + x.xi3 * x.xi3;
    return (lhs - rhs) / std::max(lhs, 1.0);
}

// Inverse of hopf_map on the xi3 = 0 slice: the unique ladder
// representative with v12 = +sqrt(xi0) and v14 = 0.
inline CouplingSet ladder_from_hopf(const HopfCoordinates& x, double tol = 1e-9) {
    if (!std::isfinite(x.xi0) || !std::isfinite(x.xi1) || !std::isfinite(x.xi2) ||
        !std::isfinite(x.xi3))
        throw InvalidInput("ladder_from_hopf: coordinates must be finite");
    if (x.xi0 <= 0.0) throw DegenerateInput("ladder_from_hopf: xi0 must be positive");
    if (std::abs(x.xi3) > tol * x.xi0)
        throw NotInvertibleAsLadder("ladder_from_hopf: xi3 != 0 has no ladder preimage");
    if (std::abs(cone_residual(x)) > tol)
        throw InvalidCoordinates("ladder_from_hopf: coordinates are off the cone");
    const double v12 = std::sqrt(x.xi0);
    return CouplingSet{v12, x.xi1 / v12, x.xi2 / v12, 0.0};
}

}  // namespace quartet
