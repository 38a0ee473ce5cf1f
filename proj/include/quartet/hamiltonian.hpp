#pragma once

// Four-mode nearest-neighbor Hamiltonian on a closed loop:
// couplings 1-2, 2-3, 3-4 and 1-4, zero diagonal.  A Bell-type
// change of basis splits it into two commuting su(2) blocks.

#include <cmath>
#include <utility>

#include "quartet/error.hpp"
#include "quartet/linalg.hpp"

namespace quartet {

struct CouplingSet {
    double v12 = 0.0;
    double v23 = 0.0;
    double v34 = 0.0;
    double v14 = 0.0;

    void validate() const {
        if (!std::isfinite(v12) || !std::isfinite(v23) || !std::isfinite(v34) ||
            !std::isfinite(v14))
            throw InvalidInput("CouplingSet: couplings must be finite");
    }
};

// Traceless real generator cx*sigma_x + cz*sigma_z.
struct Su2Generator {
    double cx = 0.0;
    double cz = 0.0;

    double norm() const { return std::hypot(cx, cz); }

    Mat2 matrix() const { return Mat2{{cz, cx, cx, -cz}}; }
};

inline Mat4 build_hamiltonian(const CouplingSet& c) {
    c.validate();
    Mat4 h;
    h(0, 1) = h(1, 0) = c.v12;
    h(1, 2) = h(2, 1) = c.v23;
    h(2, 3) = h(3, 2) = c.v34;
    h(0, 3) = h(3, 0) = c.v14;
    return h;
}

// Involutory orthogonal transform pairing modes (1,4) and (2,3).
inline Mat4 bell_transform() {
    const double s = 1.0 / std::sqrt(2.0);
    Mat4 w;
    w(0, 0) = s;  w(0, 3) = s;
    w(1, 1) = s;  w(1, 2) = s;
    w(2, 1) = s;  w(2, 2) = -s;
    w(3, 0) = s;  w(3, 3) = -s;
    return w;
}

// W H W = h1 (x) I + I (x) h2 with h1 acting on the slow factor.
inline std::pair<Su2Generator, Su2Generator> decompose(const CouplingSet& c) {
    c.validate();
    Su2Generator h1{0.5 * (c.v12 - c.v34), 0.5 * (c.v23 + c.v14)};
    Su2Generator h2{0.5 * (c.v12 + c.v34), -0.5 * (c.v23 - c.v14)};
    return {h1, h2};
}

}  // namespace quartet
