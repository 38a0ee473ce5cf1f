#pragma once

// Ground-truth path, deliberately independent of the factored evolution:
// a hand-rolled cyclic Jacobi eigensolver, spectral propagation, a grid
// scan with golden-section refinement for transfer maxima, and a
// fixed-step RK4 integrator for triple redundancy.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <utility>

#include "quartet/error.hpp"
#include "quartet/linalg.hpp"

namespace quartet {

struct EigenSystem4 {
    std::array<double, 4> eigenvalues{};                 // ascending
    std::array<std::array<double, 4>, 4> eigenvectors{}; // eigenvectors[k] pairs with eigenvalues[k]
};

namespace detail {

inline double frobenius_real(const std::array<std::array<double, 4>, 4>& a) {
    double s = 0.0;
    for (const auto& row : a)
        for (double v : row) s += v * v;
    return std::sqrt(s);
}

inline double offdiag_norm(const std::array<std::array<double, 4>, 4>& a) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) s += a[i][j] * a[i][j];
    return std::sqrt(s);
}

}  // namespace detail

inline EigenSystem4 jacobi_eigs(const Mat4& h) {
    // Real-symmetric input only; reject anything else before iterating.
    std::array<std::array<double, 4>, 4> a{};
    double norm = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            a[i][j] = h(i, j).real();
            norm += std::norm(h(i, j));
        }
    norm = std::sqrt(norm);
    const double sym_tol = 1e-12 * std::max(norm, 1.0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (std::abs(h(i, j).imag()) > sym_tol)
                throw InvalidInput("jacobi_eigs: matrix must be real");
            if (std::abs(h(i, j).real() - h(j, i).real()) > sym_tol)
                throw InvalidInput("jacobi_eigs: matrix must be symmetric");
        }

    std::array<std::array<double, 4>, 4> v{};
    for (int i = 0; i < 4; ++i) v[i][i] = 1.0;

    const double stop = 1e-14 * norm;
    bool converged = detail::offdiag_norm(a) <= stop;
    for (int sweep = 0; sweep < 50 && !converged; ++sweep) {
        for (int p = 0; p < 3; ++p)
            for (int q = p + 1; q < 4; ++q) {
                if (a[p][q] == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < 4; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 4; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < 4; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        converged = detail::offdiag_norm(a) <= stop;
    }
    if (!converged) throw NumericalFailure("jacobi_eigs: no convergence in 50 sweeps");

    std::array<int, 4> order{0, 1, 2, 3};
    std::sort(order.begin(), order.end(),
              [&a](int i, int j) { return a[i][i] < a[j][j]; });

    EigenSystem4 es;
    for (int k = 0; k < 4; ++k) {
        const int c = order[k];
        es.eigenvalues[k] = a[c][c];
        for (int i = 0; i < 4; ++i) es.eigenvectors[k][i] = v[i][c];
        // Fix the overall sign: largest-magnitude component points up.
        int imax = 0;
        for (int i = 1; i < 4; ++i)
            if (std::abs(es.eigenvectors[k][i]) > std::abs(es.eigenvectors[k][imax])) imax = i;
        if (es.eigenvectors[k][imax] < 0.0)
            for (int i = 0; i < 4; ++i) es.eigenvectors[k][i] = -es.eigenvectors[k][i];
    }
    return es;
}

namespace detail {

inline StateAmplitudes propagate_spectral(const EigenSystem4& es, const StateAmplitudes& psi0,
                                          double t) {
    StateAmplitudes out;
    for (int k = 0; k < 4; ++k) {
        cplx overlap = 0.0;
        for (int i = 0; i < 4; ++i) overlap += es.eigenvectors[k][i] * psi0[i];
        const cplx phase = std::exp(cplx(0.0, -es.eigenvalues[k] * t));
        for (int i = 0; i < 4; ++i) out[i] += phase * es.eigenvectors[k][i] * overlap;
    }
    return out;
}

}  // namespace detail

inline StateAmplitudes oracle_propagate(const Mat4& h, const StateAmplitudes& psi0, double t) {
    if (!std::isfinite(t)) throw InvalidInput("oracle_propagate: time must be finite");
    if (std::abs(psi0.norm() - 1.0) > 1e-9)
        throw InvalidState("oracle_propagate: state must be normalized");
    return detail::propagate_spectral(jacobi_eigs(h), psi0, t);
}

// Scans |<to|psi(t)>|^2 on a uniform grid, then sharpens the winning
// bracket by golden-section search.  Ties on the grid go to smaller t.
inline std::pair<double, double> oracle_max_transfer(const Mat4& h, int from, int to,
                                                     double t_max, int n) {
    if (n < 100) throw InvalidInput("oracle_max_transfer: need at least 100 grid points");
    if (!(t_max > 0.0) || !std::isfinite(t_max))
        throw InvalidInput("oracle_max_transfer: t_max must be positive and finite");
    if (to < 1 || to > 4) throw InvalidInput("oracle_max_transfer: level must be in 1..4");
    const EigenSystem4 es = jacobi_eigs(h);
    const StateAmplitudes psi0 = StateAmplitudes::basis_state(from);
    const int target = to - 1;

    auto fidelity = [&](double t) {
        return std::norm(detail::propagate_spectral(es, psi0, t)[target]);
    };

    const double dt = t_max / n;
    int best_i = 0;
    double best_f = fidelity(0.0);
    for (int i = 1; i <= n; ++i) {
        const double f = fidelity(i * dt);
        if (f > best_f) {
            best_f = f;
            best_i = i;
        }
    }

    double lo = std::max(0.0, (best_i - 1) * dt);
    double hi = std::min(t_max, (best_i + 1) * dt);
    double best_t = best_i * dt;

    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = hi - gr * (hi - lo);
    double d = lo + gr * (hi - lo);
    double fc = fidelity(c);
    double fd = fidelity(d);
    while (hi - lo > 1e-10) {
        if (fc >= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = fidelity(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = fidelity(d);
        }
        const double t_mid = 0.5 * (lo + hi);
        const double f_mid = fidelity(t_mid);
        if (f_mid > best_f || (f_mid == best_f && t_mid < best_t)) {
            best_f = f_mid;
            best_t = t_mid;
        }
    }
    return {best_t, best_f};
}

// Fixed-step RK4 on d psi/dt = -i H psi.  The step keeps the local
// truncation error (~(|H| dt)^5/120 per step) below 1e-12.
inline StateAmplitudes rk4_propagate(const Mat4& h, const StateAmplitudes& psi0, double t) {
    if (!std::isfinite(t)) throw InvalidInput("rk4_propagate: time must be finite");
    if (std::abs(psi0.norm() - 1.0) > 1e-9)
        throw InvalidState("rk4_propagate: state must be normalized");

    double norm = 0.0;
    for (const auto& e : h.m) norm += std::norm(e);
    norm = std::sqrt(norm);

    const double span = std::abs(t);
    long steps = 1;
    if (norm > 0.0 && span > 0.0)
        steps = std::max<long>(1, static_cast<long>(std::ceil(span * norm / 6.6e-3)));
    const double dt = t / static_cast<double>(steps);

    auto deriv = [&h](const StateAmplitudes& psi) {
        StateAmplitudes d;
        for (int i = 0; i < 4; ++i) {
            cplx s = 0.0;
            for (int j = 0; j < 4; ++j) s += h(i, j) * psi[j];
            d[i] = cplx(0.0, -1.0) * s;
        }
        return d;
    };

    StateAmplitudes psi = psi0;
    for (long step = 0; step < steps; ++step) {
        const StateAmplitudes k1 = deriv(psi);
        StateAmplitudes tmp;
        for (int i = 0; i < 4; ++i) tmp[i] = psi[i] + 0.5 * dt * k1[i];
        const StateAmplitudes k2 = deriv(tmp);
        for (int i = 0; i < 4; ++i) tmp[i] = psi[i] + 0.5 * dt * k2[i];
        const StateAmplitudes k3 = deriv(tmp);
        for (int i = 0; i < 4; ++i) tmp[i] = psi[i] + dt * k3[i];
        const StateAmplitudes k4 = deriv(tmp);
        for (int i = 0; i < 4; ++i)
            psi[i] += (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return psi;
}

}  // namespace quartet
