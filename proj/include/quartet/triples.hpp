#pragma once

// Pythagorean-triple arithmetic and its link to complete transfer:
// odd coprime pairs (p, q) generate primitive triples, and the same
// pairs parameterize every coupling ratio that transfers completely.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "quartet/dynamics.hpp"
#include "quartet/error.hpp"
#include "quartet/hamiltonian.hpp"
#include "quartet/hopf.hpp"

namespace quartet {

// Canonical slot order: even leg, odd leg, hypotenuse.
struct PythTriple {
    long a = 0;
    long b = 0;
    long c = 0;
};

struct OddPair {
    int p;
    int q;

    OddPair(int p_, int q_) : p(p_), q(q_) {
        if (p <= 0 || q <= 0 || p % 2 == 0 || q % 2 == 0)
            throw InvalidPair("OddPair: p and q must be positive odd integers");
        if (p <= q) throw InvalidPair("OddPair: need p > q");
        if (std::gcd(p, q) != 1) throw InvalidPair("OddPair: p and q must be coprime");
    }
};

inline PythTriple euclid_triple(const OddPair& pair) {
    const long p = pair.p;
    const long q = pair.q;
    return PythTriple{(p * p - q * q) / 2, p * q, (p * p + q * q) / 2};
}

inline bool is_pythagorean(long a, long b, long c) {
    if (a <= 0 || b <= 0 || c <= 0)
        throw InvalidInput("is_pythagorean: sides must be positive");
    return a * a + b * b == c * c;
}

inline bool is_primitive(long a, long b, long c) {
    return is_pythagorean(a, b, c) && std::gcd(std::gcd(a, b), c) == 1;
}

// All primitive triples with hypotenuse <= c_max, one per odd pair,
// sorted by hypotenuse then by the shorter leg.
inline std::vector<PythTriple> enumerate_primitive(long c_max) {
    std::vector<PythTriple> out;
    for (long p = 3; (p * p + 1) / 2 <= c_max; p += 2)
        for (long q = 1; q < p; q += 2) {
            if (std::gcd(p, q) != 1) continue;
            const long c = (p * p + q * q) / 2;
            if (c > c_max) break;
            out.push_back(PythTriple{(p * p - q * q) / 2, p * q, c});
        }
    std::sort(out.begin(), out.end(), [](const PythTriple& x, const PythTriple& y) {
        if (x.c != y.c) return x.c < y.c;
        return std::min(x.a, x.b) < std::min(y.a, y.b);
    });
    return out;
}

// Ladder couplings that transfer completely at exactly tau, scaled so
// (xi0, xi1, xi2) = (pi/2tau)^2 (p^2+q^2, 2pq, p^2-q^2); the coupling
// ratio v12:v23:v34 is the triple ratio c:b:a.
inline std::pair<CouplingSet, TransferSolution> couplings_from_pair(const OddPair& pair,
                                                                    double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau))
        throw InvalidInput("couplings_from_pair: tau must be positive");
    const double p = pair.p;
    const double q = pair.q;
    const double s = std::pow(std::numbers::pi / (2.0 * tau), 2);
    const HopfCoordinates x{s * (p * p + q * q), s * 2.0 * p * q, s * (p * p - q * q), 0.0};
    TransferSolution sol;
    sol.tau = tau;
    sol.p = pair.p;
    sol.q = pair.q;
    sol.omega = std::numbers::pi / tau;
    sol.vL = q * std::numbers::pi / (2.0 * tau);
    sol.vR = p * std::numbers::pi / (2.0 * tau);
    return {ladder_from_hopf(x), sol};
}

struct TransferMatch {
    PythTriple triple;
    OddPair pair;
    TransferSolution solution;
};

// Recognizes transfer-capable couplings and names the triple they
// realize.  Total: degenerate input is a non-match, not an error.
// Equal frequencies (p = q = 1) transfer completely but correspond
// to the degenerate leg a = 0, so they report no match either.
inline std::optional<TransferMatch> detect_transfer_condition(const CouplingSet& c, double tol) {
    if (!(tol > 0.0) || !std::isfinite(tol))
        throw InvalidInput("detect_transfer_condition: tolerance must be positive");
    if (hopf_map(c).xi0 <= 0.0) return std::nullopt;
    const auto sol = transfer_time(c, tol);
    if (!sol || sol->p == sol->q) return std::nullopt;
    const OddPair pair(sol->p, sol->q);
    return TransferMatch{euclid_triple(pair), pair, *sol};
}

}  // namespace quartet
