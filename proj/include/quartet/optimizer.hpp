#pragma once

// Derivative-free inverse design: minimize 1 - |a3(tau)|^2 over the
// coupling box with multistart Nelder-Mead.  The objective fixes the
// target time rather than taking a supremum over time; that is what
// forces commensurate frequencies (and hence triple ratios) to emerge.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "quartet/dynamics.hpp"
#include "quartet/error.hpp"
#include "quartet/hamiltonian.hpp"
#include "quartet/hopf.hpp"
#include "quartet/triples.hpp"

namespace quartet {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

struct NelderMeadOptions {
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
    double diameter_tol = 1e-10;
    double fspread_tol = 1e-14;
    int max_evaluations = 20000;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;
};

// Standard simplex method with bounds enforced by coordinate clamping.
// Deterministic: no randomness, stable ordering on value ties.
template <typename F>
NelderMeadResult nelder_mead(F&& f, const std::vector<double>& x0,
                             const NelderMeadOptions& opt = {},
                             const std::vector<Interval>& bounds = {}) {
    const std::size_t n = x0.size();
    if (n == 0) throw InvalidInput("nelder_mead: empty starting point");
    for (double v : x0)
        if (!std::isfinite(v)) throw InvalidInput("nelder_mead: starting point must be finite");
    if (!bounds.empty() && bounds.size() != n)
        throw InvalidInput("nelder_mead: bounds dimension mismatch");

    auto project = [&bounds](std::vector<double>& x) {
        for (std::size_t i = 0; i < bounds.size(); ++i)
            x[i] = std::clamp(x[i], bounds[i].lo, bounds[i].hi);
    };

    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return f(x);
    };

    struct Vertex {
        std::vector<double> x;
        double fv;
    };
    std::vector<Vertex> simplex;
    simplex.reserve(n + 1);

    std::vector<double> base = x0;
    project(base);
    simplex.push_back({base, eval(base)});
    for (std::size_t i = 0; i < n; ++i) {
        double step;
        if (i < bounds.size() && bounds[i].hi > bounds[i].lo)
            step = 0.1 * (bounds[i].hi - bounds[i].lo);
        else
            step = base[i] != 0.0 ? 0.05 * std::abs(base[i]) : 2.5e-4;
        std::vector<double> v = base;
        v[i] += step;
        if (i < bounds.size() && v[i] > bounds[i].hi) v[i] = base[i] - step;
        project(v);
        simplex.push_back({v, eval(v)});
    }

    auto by_value = [](const Vertex& a, const Vertex& b) { return a.fv < b.fv; };

    bool converged = false;
    while (evals < opt.max_evaluations) {
        std::stable_sort(simplex.begin(), simplex.end(), by_value);

        double diam = 0.0;
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t j = i + 1; j <= n; ++j) {
                double d2 = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double d = simplex[i].x[k] - simplex[j].x[k];
                    d2 += d * d;
                }
                diam = std::max(diam, d2);
            }
        diam = std::sqrt(diam);
        if (diam < opt.diameter_tol || simplex[n].fv - simplex[0].fv < opt.fspread_tol) {
            converged = true;
            break;
        }

        std::vector<double> cen(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) cen[k] += simplex[i].x[k] / n;

        // cen + coef * (cen - worst), clamped into the box
        auto make_point = [&](double coef) {
            std::vector<double> x(n);
            for (std::size_t k = 0; k < n; ++k)
                x[k] = cen[k] + coef * (cen[k] - simplex[n].x[k]);
            project(x);
            return x;
        };

        const std::vector<double> xr = make_point(opt.reflection);
        const double fr = eval(xr);
        if (fr < simplex[0].fv) {
            if (evals < opt.max_evaluations) {
                const std::vector<double> xe = make_point(opt.reflection * opt.expansion);
                const double fe = eval(xe);
                if (fe < fr) {
                    simplex[n] = {xe, fe};
                    continue;
                }
            }
            simplex[n] = {xr, fr};
            continue;
        }
        if (fr < simplex[n - 1].fv) {
            simplex[n] = {xr, fr};
            continue;
        }
        if (fr < simplex[n].fv) {
            if (evals >= opt.max_evaluations) {
                simplex[n] = {xr, fr};
                break;
            }
            const std::vector<double> xc = make_point(opt.reflection * opt.contraction);
            const double fc = eval(xc);
            if (fc <= fr) {
                simplex[n] = {xc, fc};
                continue;
            }
        } else {
            if (evals >= opt.max_evaluations) break;
            const std::vector<double> xc = make_point(-opt.contraction);
            const double fc = eval(xc);
            if (fc < simplex[n].fv) {
                simplex[n] = {xc, fc};
                continue;
            }
        }
        for (std::size_t i = 1; i <= n && evals < opt.max_evaluations; ++i) {
            for (std::size_t k = 0; k < n; ++k)
                simplex[i].x[k] = simplex[0].x[k] + opt.shrink * (simplex[i].x[k] - simplex[0].x[k]);
            simplex[i].fv = eval(simplex[i].x);
        }
    }

    std::stable_sort(simplex.begin(), simplex.end(), by_value);
    return {simplex[0].x, simplex[0].fv, evals, converged};
}

inline double infidelity(const CouplingSet& c, double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau))
        throw InvalidInput("infidelity: tau must be positive");
    const ClosedFormAmplitudes amp = amplitudes_closed_form(c, tau);
    if (amp.disconnected) return 1.0;
    return std::clamp(1.0 - amp.a3 * amp.a3, 0.0, 1.0);
}

struct DesignProblem {
    double tau_target = 1.0;
    std::array<Interval, 4> bounds{};  // v12, v23, v34, v14
    bool ladder_only = true;
    std::uint64_t seed = 0;
    int starts = 32;

    void validate() const {
        if (!(tau_target > 0.0) || !std::isfinite(tau_target))
            throw InvalidInput("DesignProblem: tau_target must be positive");
        for (const auto& b : bounds)
            if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || b.lo > b.hi)
                throw InvalidInput("DesignProblem: bounds must be finite closed intervals");
        if (starts < 1) throw InvalidInput("DesignProblem: need at least one start");
    }
};

struct DesignResult {
    CouplingSet couplings;
    double infidelity = 1.0;
    HopfCoordinates hopf;
    std::optional<TransferMatch> matched;
    long evaluations = 0;
};

// Multistart search.  Start points come from a seeded mt19937_64 with
// explicit 53-bit canonical doubles, so results are reproducible
// across platforms.  Best start wins; value ties keep the earliest.
inline DesignResult design_search(const DesignProblem& prob) {
    prob.validate();
    const std::size_t dim = prob.ladder_only ? 3 : 4;
    const std::vector<Interval> bounds(prob.bounds.begin(), prob.bounds.begin() + dim);

    auto objective = [&prob](const std::vector<double>& x) {
        const CouplingSet c{x[0], x[1], x[2], prob.ladder_only ? 0.0 : x[3]};
        return infidelity(c, prob.tau_target);
    };

    std::mt19937_64 rng(prob.seed);
    auto canonical = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    const NelderMeadOptions opt;
    DesignResult best;
    best.infidelity = std::numeric_limits<double>::infinity();
    long total_evals = 0;
    for (int s = 0; s < prob.starts; ++s) {
        std::vector<double> x0(dim);
        for (std::size_t i = 0; i < dim; ++i)
            x0[i] = bounds[i].lo + canonical() * (bounds[i].hi - bounds[i].lo);
        const NelderMeadResult r = nelder_mead(objective, x0, opt, bounds);
        total_evals += r.evaluations;
        if (r.value < best.infidelity) {
            best.infidelity = r.value;
            best.couplings = CouplingSet{r.x[0], r.x[1], r.x[2], prob.ladder_only ? 0.0 : r.x[3]};
        }
    }
    best.evaluations = total_evals;
    best.hopf = hopf_map(best.couplings);
    if (best.infidelity <= 1e-8)
        best.matched = detect_transfer_condition(best.couplings, 1e-5);
    return best;
}

}  // namespace quartet
