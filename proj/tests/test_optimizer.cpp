#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "quartet/optimizer.hpp"
#include "quartet/oracle.hpp"

using namespace quartet;

namespace {

constexpr double kTau534 = 0.99345882657961004;

double bowl(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += (v - 1.0) * (v - 1.0);
    return s;
}

}  // namespace

TEST_CASE("infidelity reference values") {
    CHECK(infidelity({5, 3, 4, 0}, kTau534) <= 1e-15);
    CHECK(infidelity({5, 3, 4, 0}, kTau534 / 2.0) == Catch::Approx(0.75).margin(1e-12));
    CHECK(infidelity({1, 0, 0, 1}, 1.0) == 1.0);  // xi1 = xi3 = 0, no route to level 3
    CHECK_THROWS_AS(infidelity({5, 3, 4, 0}, 0.0), InvalidInput);
    CHECK_THROWS_AS(infidelity({5, 3, 4, 0}, -0.5), InvalidInput);
}

TEST_CASE("nelder_mead minimizes a quadratic bowl") {
    const std::vector<double> x0{0.0, 0.0, 0.0};
    const NelderMeadResult r = nelder_mead(bowl, x0);
    REQUIRE(r.converged);
    REQUIRE(r.x.size() == 3);
    for (double v : r.x) CHECK(v == Catch::Approx(1.0).margin(1e-6));
    CHECK(r.value <= bowl(x0));
    CHECK(r.value <= 1e-10);
    CHECK(r.evaluations > 0);
}

TEST_CASE("nelder_mead is deterministic") {
    const std::vector<double> x0{0.3, -0.7};
    const NelderMeadResult a = nelder_mead(bowl, x0);
    const NelderMeadResult b = nelder_mead(bowl, x0);
    REQUIRE(a.x.size() == b.x.size());
    for (std::size_t i = 0; i < a.x.size(); ++i) CHECK(a.x[i] == b.x[i]);
    CHECK(a.value == b.value);
    CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("nelder_mead respects the evaluation budget") {
    NelderMeadOptions opt;
    opt.max_evaluations = 50;
    const NelderMeadResult r = nelder_mead(bowl, {10.0, 10.0, 10.0, 10.0}, opt);
    CHECK_FALSE(r.converged);
    CHECK(r.evaluations <= 50);
}

TEST_CASE("nelder_mead keeps iterates inside the bounds") {
    long outside = 0;
    auto f = [&outside](const std::vector<double>& x) {
        for (double v : x)
            if (v < 0.0 || v > 1.0) ++outside;
        double s = 0.0;
        for (double v : x) s += (v - 2.0) * (v - 2.0);
        return s;
    };
    const std::vector<Interval> bounds{{0.0, 1.0}, {0.0, 1.0}};
    const NelderMeadResult r = nelder_mead(f, {0.5, 0.5}, {}, bounds);
    CHECK(outside == 0);
    REQUIRE(r.x.size() == 2);
    CHECK(r.x[0] == Catch::Approx(1.0).margin(1e-6));
    CHECK(r.x[1] == Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("nelder_mead input validation") {
    CHECK_THROWS_AS(nelder_mead(bowl, {}), InvalidInput);
    const double bad = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(nelder_mead(bowl, {bad, 0.0}), InvalidInput);
    CHECK_THROWS_AS(nelder_mead(bowl, {0.0, 0.0}, {}, {{0.0, 1.0}}), InvalidInput);
}

TEST_CASE("design_search finds a complete-transfer ladder") {
    DesignProblem prob;
    prob.tau_target = std::numbers::pi / (2.0 * std::sqrt(2.5));
    prob.bounds = {{{0.0, 8.0}, {0.0, 8.0}, {0.0, 8.0}, {0.0, 8.0}}};
    prob.seed = 7;
    const DesignResult r = design_search(prob);
    CHECK(r.infidelity <= 1e-8);
    CHECK(r.couplings.v14 == 0.0);
    CHECK(r.evaluations > 0);

    // certify with the spectral propagator, not the objective's own path
    const StateAmplitudes psi = oracle_propagate(build_hamiltonian(r.couplings),
                                                 StateAmplitudes::basis_state(1),
                                                 prob.tau_target);
    const double oracle_infidelity = 1.0 - std::norm(psi[2]);
    CHECK(std::abs(oracle_infidelity - r.infidelity) <= 1e-10);
    CHECK(infidelity(r.couplings, prob.tau_target) == Catch::Approx(r.infidelity).margin(1e-9));
}

TEST_CASE("design_search is deterministic for a fixed seed") {
    DesignProblem prob;
    prob.tau_target = std::numbers::pi / (2.0 * std::sqrt(2.5));
    prob.bounds = {{{0.0, 8.0}, {0.0, 8.0}, {0.0, 8.0}, {0.0, 8.0}}};
    prob.seed = 7;
    const DesignResult a = design_search(prob);
    const DesignResult b = design_search(prob);
    CHECK(a.couplings.v12 == b.couplings.v12);
    CHECK(a.couplings.v23 == b.couplings.v23);
    CHECK(a.couplings.v34 == b.couplings.v34);
    CHECK(a.infidelity == b.infidelity);
    CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("design_search reports failure honestly on a starved box") {
    DesignProblem prob;
    prob.tau_target = std::numbers::pi / (2.0 * std::sqrt(2.5));
    prob.bounds = {{{0.0, 0.1}, {0.0, 0.1}, {0.0, 0.1}, {0.0, 0.1}}};
    prob.seed = 3;
    const DesignResult r = design_search(prob);
    CHECK(r.infidelity >= 0.99);
    CHECK_FALSE(r.matched.has_value());
}

TEST_CASE("design_search validates the problem") {
    DesignProblem prob;
    prob.tau_target = 0.0;
    CHECK_THROWS_AS(design_search(prob), InvalidInput);
    prob.tau_target = 1.0;
    prob.bounds = {{{1.0, 0.0}, {0.0, 8.0}, {0.0, 8.0}, {0.0, 8.0}}};
    CHECK_THROWS_AS(design_search(prob), InvalidInput);
    prob.bounds = {{{0.0, 8.0}, {0.0, 8.0}, {0.0, 8.0}, {0.0, 8.0}}};
    prob.starts = 0;
    CHECK_THROWS_AS(design_search(prob), InvalidInput);
}
