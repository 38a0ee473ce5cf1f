#pragma once

// Factored time evolution for the four-mode loop.  States evolve by
// exp(-iHt); both su(2) factors carry the same -i convention, which
// flips a pair of sine signs relative to writing the factors with +i
// but leaves every product and every population unchanged.

#include <cmath>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "quartet/error.hpp"
#include "quartet/hamiltonian.hpp"
#include "quartet/hopf.hpp"
#include "quartet/linalg.hpp"

namespace quartet {

struct FrequencyPair {
    double vL = 0.0;
    double vR = 0.0;
};

// Complete 1 -> 3 transfer instant: both factors reach odd quarter
// turns at once, vL*tau = q*pi/2 and vR*tau = p*pi/2, labeled so that
// vL <= vR and q <= p with p, q odd and coprime.
struct TransferSolution {
    double tau = 0.0;
    int p = 0;
    int q = 0;
    double omega = 0.0;  // pi / tau
    double vL = 0.0;
    double vR = 0.0;
};

struct TwoLevelParams {
    double v = 0.0;
    double delta = 0.0;

    void validate() const {
        if (!std::isfinite(v) || !std::isfinite(delta))
            throw InvalidInput("TwoLevelParams: values must be finite");
    }
};

struct TimeSeries {
    std::vector<double> times;
    std::vector<StateAmplitudes> amplitudes;
};

struct ClosedFormAmplitudes {
    double a1 = 1.0;
    double a3 = 0.0;
    // xi1 = xi3 = 0: modes 1 and 3 sit in different invariant sectors,
    // the transfer prefactor is 0/0 and a3 vanishes identically.
    bool disconnected = false;
};

// exp(-i t (cx*sigma_x + cz*sigma_z)) in closed form.
inline Mat2 su2_rotation(const Su2Generator& g, double t) {
    const double n = g.norm();
    if (n == 0.0) return Mat2::identity();
    const double theta = t * n;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double nx = g.cx / n;
    const double nz = g.cz / n;
    return Mat2{{cplx(c, -s * nz), cplx(0.0, -s * nx), cplx(0.0, -s * nx), cplx(c, s * nz)}};
}

namespace detail {

// A = a1*I + a2*sigma_x + i*a3*sigma_y + a4*sigma_z
inline Mat2 encode_state(const StateAmplitudes& s) {
    return Mat2{{s[0] + s[3], s[1] + s[2], s[1] - s[2], s[0] - s[3]}};
}

inline StateAmplitudes decode_state(const Mat2& a) {
    StateAmplitudes s;
    s[0] = 0.5 * (a.m[0] + a.m[3]);
    s[1] = 0.5 * (a.m[1] + a.m[2]);
    s[2] = 0.5 * (a.m[1] - a.m[2]);
    s[3] = 0.5 * (a.m[0] - a.m[3]);
    return s;
}

}  // namespace detail

// Evolves by encoding the state as a 2x2 block, A(t) = u1 A(0) u2^T,
// and decoding.  Equals exp(-iHt) psi0 for every nearest-neighbor H.
inline StateAmplitudes propagate_factored(const CouplingSet& c, const StateAmplitudes& psi0,
                                          double t) {
    if (!std::isfinite(t)) throw InvalidInput("propagate_factored: time must be finite");
    if (std::abs(psi0.norm() - 1.0) > 1e-6)
        throw InvalidState("propagate_factored: state must be normalized");
    const auto [h1, h2] = decompose(c);
    const Mat2 u1 = su2_rotation(h1, t);
    const Mat2 u2 = su2_rotation(h2, t);
    return detail::decode_state(u1 * detail::encode_state(psi0) * u2.transpose());
}

// Full 4x4 propagator assembled as W (u1 kron u2) W; matrix-level
// counterpart of propagate_factored, kept separate so tests can pit
// it against the spectral oracle entry by entry.
inline Mat4 factored_propagator(const CouplingSet& c, double t) {
    if (!std::isfinite(t)) throw InvalidInput("factored_propagator: time must be finite");
    const auto [h1, h2] = decompose(c);
    const Mat4 w = bell_transform();
    return w * kron(su2_rotation(h1, t), su2_rotation(h2, t)) * w;
}

inline FrequencyPair frequencies(const HopfCoordinates& x) {
    if (!std::isfinite(x.xi0) || !std::isfinite(x.xi2))
        throw InvalidInput("frequencies: coordinates must be finite");
    const double dm = 0.5 * (x.xi0 - x.xi2);
    const double dp = 0.5 * (x.xi0 + x.xi2);
    const double slack = 1e-12 * std::max(std::abs(x.xi0), 1.0);
    if (dm < -slack || dp < -slack)
        throw InvalidCoordinates("frequencies: need xi0 >= |xi2|");
    return {std::sqrt(std::max(dm, 0.0)), std::sqrt(std::max(dp, 0.0))};
}

// Real amplitudes of modes 1 and 3 when starting from mode 1.
inline ClosedFormAmplitudes amplitudes_closed_form(const CouplingSet& c, double t) {
    if (!std::isfinite(t)) throw InvalidInput("amplitudes_closed_form: time must be finite");
    const HopfCoordinates x = hopf_map(c);
    const FrequencyPair f = frequencies(x);
    const double cL = std::cos(f.vL * t);
    const double sL = std::sin(f.vL * t);
    const double cR = std::cos(f.vR * t);
    const double sR = std::sin(f.vR * t);
    const double mag = std::hypot(x.xi1, x.xi3);
    ClosedFormAmplitudes out;
    if (mag == 0.0) {
        out.a1 = cL * cR;
        out.a3 = 0.0;
        out.disconnected = true;
        return out;
    }
    out.a1 = cL * cR - (x.xi3 / mag) * sL * sR;
    out.a3 = -(x.xi1 / mag) * sL * sR;
    return out;
}

// Earliest time at which both factor phases reach odd multiples of
// pi/2 simultaneously.  The frequency ratio is matched to an odd/odd
// coprime fraction q/p (p, q <= 99) via continued-fraction
// convergents; none means no such fraction approximates the ratio
// within tol, or xi3 is off the transfer slice.
inline std::optional<TransferSolution> transfer_time(const CouplingSet& c, double tol) {
    if (!(tol > 0.0) || !std::isfinite(tol))
        throw InvalidInput("transfer_time: tolerance must be positive");
    const HopfCoordinates x = hopf_map(c);
    if (x.xi0 <= 0.0) throw DegenerateInput("transfer_time: zero Hamiltonian, nothing evolves");
    if (std::abs(x.xi3) > tol * x.xi0) return std::nullopt;

    const FrequencyPair f = frequencies(x);
    const double lo = std::min(f.vL, f.vR);
    const double hi = std::max(f.vL, f.vR);
    if (lo <= 0.0) return std::nullopt;  // one factor frozen, modes 1 and 3 disconnected

    const double r = lo / hi;
    long q = 0, p = 0;
    double v = r;
    long h1 = 1, h2 = 0;  // convergent numerators
    long k1 = 0, k2 = 1;  // convergent denominators
    for (int iter = 0; iter < 64; ++iter) {
        const double af = std::floor(v);
        if (af > 99.0) break;
        const long a = static_cast<long>(af);
        const long h = a * h1 + h2;
        const long k = a * k1 + k2;
        if (k > 99 || h > 99) break;
        if (h >= 1 && h % 2 == 1 && k % 2 == 1 &&
            std::abs(r - static_cast<double>(h) / static_cast<double>(k)) <= tol) {
            q = h;
            p = k;
            break;
        }
        const double frac = v - af;
        if (frac < 1e-15) break;
        v = 1.0 / frac;
        h2 = h1;
        h1 = h;
        k2 = k1;
        k1 = k;
    }
    if (p == 0) return std::nullopt;

    TransferSolution sol;
    sol.q = static_cast<int>(q);
    sol.p = static_cast<int>(p);
    sol.tau = static_cast<double>(q) * std::numbers::pi / (2.0 * lo);
    sol.omega = std::numbers::pi / sol.tau;
    sol.vL = lo;
    sol.vR = hi;
    return sol;
}

inline TimeSeries population_series(const CouplingSet& c, double t_max, int n_steps) {
    if (!(t_max > 0.0) || !std::isfinite(t_max))
        throw InvalidInput("population_series: t_max must be positive");
    if (n_steps < 2) throw InvalidInput("population_series: need at least 2 steps");
    const StateAmplitudes psi0 = StateAmplitudes::basis_state(1);
    TimeSeries ts;
    ts.times.reserve(n_steps + 1);
    ts.amplitudes.reserve(n_steps + 1);
    for (int i = 0; i <= n_steps; ++i) {
        const double t = t_max * static_cast<double>(i) / static_cast<double>(n_steps);
        ts.times.push_back(t);
        ts.amplitudes.push_back(propagate_factored(c, psi0, t));
    }
    return ts;
}

// Reference two-level Rabi solution for H = [[delta, v], [v, -delta]],
// starting in the ground mode: ag = cos - i(delta/V)sin, ae = -i(v/V)sin
// with V = sqrt(v^2 + delta^2), so max |ae|^2 = v^2/(v^2 + delta^2).
inline std::pair<cplx, cplx> two_level_amplitudes(const TwoLevelParams& p, double t) {
    const double vt = std::hypot(p.v, p.delta);
    if (vt == 0.0) return {cplx(1.0, 0.0), cplx(0.0, 0.0)};
    const double c = std::cos(vt * t);
    const double s = std::sin(vt * t);
    return {cplx(c, -(p.delta / vt) * s), cplx(0.0, -(p.v / vt) * s)};
}

}  // namespace quartet
