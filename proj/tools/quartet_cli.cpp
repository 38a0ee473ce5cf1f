// Command-line front end: simulate population dynamics, design
// transfer-capable couplings from odd pairs or triples, detect the
// triple condition behind given couplings, enumerate primitive
// triples, and search coupling space with the derivative-free
// optimizer.  Exit codes: 0 success, 1 runtime failure, 2 bad usage.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quartet/quartet.hpp"

namespace {

// 17 significant digits everywhere so every emitted double re-parses
// to the identical bit pattern.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text << std::flush;
        if (!std::cout) throw std::runtime_error("failed writing to standard output");
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << text << std::flush;
    if (!f) throw std::runtime_error("failed writing output file: " + path);
}

std::string json_couplings(const quartet::CouplingSet& c) {
    return "{\"v12\": " + fmt(c.v12) + ", \"v23\": " + fmt(c.v23) + ", \"v34\": " + fmt(c.v34) +
           ", \"v14\": " + fmt(c.v14) + "}";
}

std::string json_xi(const quartet::HopfCoordinates& x) {
    return "[" + fmt(x.xi0) + ", " + fmt(x.xi1) + ", " + fmt(x.xi2) + ", " + fmt(x.xi3) + "]";
}

std::string json_triple(const quartet::PythTriple& t) {
    return "{\"a\": " + std::to_string(t.a) + ", \"b\": " + std::to_string(t.b) +
           ", \"c\": " + std::to_string(t.c) + "}";
}

std::string json_pair(const quartet::OddPair& p) {
    return "{\"p\": " + std::to_string(p.p) + ", \"q\": " + std::to_string(p.q) + "}";
}

std::string json_solution_fields(const quartet::TransferSolution& s) {
    return "\"tau\": " + fmt(s.tau) + ", \"omega\": " + fmt(s.omega) + ", \"vL\": " + fmt(s.vL) +
           ", \"vR\": " + fmt(s.vR);
}

std::string json_match(const std::optional<quartet::TransferMatch>& m) {
    if (!m) return "null";
    return "{\"triple\": " + json_triple(m->triple) + ", \"pair\": " + json_pair(m->pair) + ", " +
           json_solution_fields(m->solution) + "}";
}

void cmd_simulate(const quartet::CouplingSet& c, double t_max, int steps,
                  const std::string& format, const std::string& out) {
    const quartet::TimeSeries ts = quartet::population_series(c, t_max, steps);
    std::string text;
    if (format == "csv") {
        text = "t,p1,p2,p3,p4,re_a1,im_a1,re_a2,im_a2,re_a3,im_a3,re_a4,im_a4\n";
        for (std::size_t i = 0; i < ts.times.size(); ++i) {
            const quartet::StateAmplitudes& a = ts.amplitudes[i];
            text += fmt(ts.times[i]);
            for (double p : a.populations()) text += "," + fmt(p);
            for (int k = 0; k < 4; ++k)
                text += "," + fmt(a[k].real()) + "," + fmt(a[k].imag());
            text += "\n";
        }
    } else {
        auto column = [&ts](auto&& get) {
            std::string s = "[";
            for (std::size_t i = 0; i < ts.times.size(); ++i) {
                if (i) s += ", ";
                s += fmt(get(i));
            }
            return s + "]";
        };
        text = "{\"schema\": 1, \"couplings\": " + json_couplings(c) +
               ", \"t\": " + column([&](std::size_t i) { return ts.times[i]; });
        for (int k = 0; k < 4; ++k)
            text += ", \"p" + std::to_string(k + 1) +
                    "\": " + column([&](std::size_t i) { return std::norm(ts.amplitudes[i][k]); });
        for (int k = 0; k < 4; ++k) {
            text += ", \"re_a" + std::to_string(k + 1) +
                    "\": " + column([&](std::size_t i) { return ts.amplitudes[i][k].real(); });
            text += ", \"im_a" + std::to_string(k + 1) +
                    "\": " + column([&](std::size_t i) { return ts.amplitudes[i][k].imag(); });
        }
        text += "}\n";
    }
    write_output(text, out);
}

long exact_sqrt(long v) {
    const long r = std::lround(std::sqrt(static_cast<double>(v)));
    for (long k = std::max(0L, r - 1); k <= r + 1; ++k)
        if (k * k == v) return k;
    return -1;
}

quartet::OddPair pair_from_triple(const std::vector<long>& t) {
    if (t.size() != 3) throw quartet::InvalidInput("design: --triple needs exactly a,b,c");
    if (!quartet::is_pythagorean(t[0], t[1], t[2]))
        throw quartet::InvalidInput("design: triple must satisfy a^2 + b^2 = c^2");
    if (!quartet::is_primitive(t[0], t[1], t[2]))
        throw quartet::InvalidInput("design: triple must be primitive (gcd of sides 1)");
    const long even = t[0] % 2 == 0 ? t[0] : t[1];
    const long p = exact_sqrt(t[2] + even);
    const long q = exact_sqrt(t[2] - even);
    if (p < 0 || q < 0)
        throw quartet::InvalidInput("design: triple is not of the odd-pair form");
    return quartet::OddPair(static_cast<int>(p), static_cast<int>(q));
}

void cmd_design(const quartet::OddPair& pair, double tau, const std::string& out) {
    const auto [c, sol] = quartet::couplings_from_pair(pair, tau);
    const quartet::Mat4 h = quartet::build_hamiltonian(c);
    const quartet::StateAmplitudes psi =
        quartet::oracle_propagate(h, quartet::StateAmplitudes::basis_state(1), sol.tau);
    const std::string text = "{\"schema\": 1, \"couplings\": " + json_couplings(c) +
                             ", \"triple\": " + json_triple(quartet::euclid_triple(pair)) +
                             ", \"pair\": " + json_pair(pair) + ", " + json_solution_fields(sol) +
                             ", \"fidelity\": " + fmt(std::norm(psi[2])) + "}\n";
    write_output(text, out);
}

void cmd_detect(const quartet::CouplingSet& c, double tol, const std::string& out) {
    const std::string text =
        "{\"schema\": 1, \"xi\": " + json_xi(quartet::hopf_map(c)) +
        ", \"match\": " + json_match(quartet::detect_transfer_condition(c, tol)) + "}\n";
    write_output(text, out);
}

void cmd_triples(long c_max, const std::string& out) {
    std::string text;
    for (const quartet::PythTriple& t : quartet::enumerate_primitive(c_max))
        text += std::to_string(t.a) + " " + std::to_string(t.b) + " " + std::to_string(t.c) + "\n";
    write_output(text, out);
}

void cmd_optimize(double tau, const std::vector<double>& bounds, std::uint64_t seed, bool diamond,
                  int starts, const std::string& out) {
    if (bounds.size() != 2) throw quartet::InvalidInput("optimize: --bounds needs exactly lo,hi");
    quartet::DesignProblem prob;
    prob.tau_target = tau;
    const quartet::Interval iv{bounds[0], bounds[1]};
    prob.bounds = {iv, iv, iv, iv};
    prob.ladder_only = !diamond;
    prob.seed = seed;
    prob.starts = starts;
    const quartet::DesignResult res = quartet::design_search(prob);
    const std::string text = "{\"schema\": 1, \"tau\": " + fmt(tau) +
                             ", \"couplings\": " + json_couplings(res.couplings) +
                             ", \"infidelity\": " + fmt(res.infidelity) +
                             ", \"xi\": " + json_xi(res.hopf) +
                             ", \"matched\": " + json_match(res.matched) +
                             ", \"evaluations\": " + std::to_string(res.evaluations) + "}\n";
    write_output(text, out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Complete population transfer in four coupled modes.\n"
        "Couplings are angular frequencies in radians per unit time; all times\n"
        "are in the matching reciprocal unit, so only ratios and one overall\n"
        "scale matter."};
    app.require_subcommand(1);

    auto* sim = app.add_subcommand("simulate", "Propagate from mode 1 and emit the time series");
    quartet::CouplingSet sim_c;
    double sim_tmax = 0.0;
    int sim_steps = 2000;
    std::string sim_format = "csv";
    std::string sim_out;
    sim->add_option("--v12", sim_c.v12, "coupling between modes 1 and 2")->required();
    sim->add_option("--v23", sim_c.v23, "coupling between modes 2 and 3")->required();
    sim->add_option("--v34", sim_c.v34, "coupling between modes 3 and 4")->required();
    sim->add_option("--v14", sim_c.v14, "loop-closing coupling between modes 1 and 4");
    sim->add_option("--t-max", sim_tmax, "end of the time grid")->required();
    sim->add_option("--steps", sim_steps, "number of grid intervals");
    sim->add_option("--format", sim_format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sim->add_option("--out", sim_out, "write to this file instead of stdout");

    auto* des = app.add_subcommand("design",
                                   "Couplings realizing complete transfer at a chosen time");
    int des_p = 0;
    int des_q = 0;
    std::vector<long> des_triple;
    double des_tau = 1.0;
    std::string des_out;
    auto* des_p_opt = des->add_option("--p", des_p, "larger odd generator");
    auto* des_q_opt = des->add_option("--q", des_q, "smaller odd generator, coprime to p");
    auto* des_triple_opt =
        des->add_option("--triple", des_triple, "primitive triple a,b,c instead of --p/--q")
            ->delimiter(',');
    des->add_option("--tau", des_tau, "transfer time to hit");
    des->add_option("--out", des_out, "write to this file instead of stdout");
    des_p_opt->needs(des_q_opt);
    des_q_opt->needs(des_p_opt);
    des_triple_opt->excludes(des_p_opt);
    des_triple_opt->excludes(des_q_opt);

    auto* det = app.add_subcommand("detect", "Name the triple condition behind given couplings");
    quartet::CouplingSet det_c;
    double det_tol = 1e-9;
    std::string det_out;
    det->add_option("--v12", det_c.v12, "coupling between modes 1 and 2")->required();
    det->add_option("--v23", det_c.v23, "coupling between modes 2 and 3")->required();
    det->add_option("--v34", det_c.v34, "coupling between modes 3 and 4")->required();
    det->add_option("--v14", det_c.v14, "loop-closing coupling between modes 1 and 4");
    det->add_option("--tol", det_tol, "relative tolerance for the match");
    det->add_option("--out", det_out, "write to this file instead of stdout");

    auto* tri = app.add_subcommand("triples", "List primitive Pythagorean triples");
    long tri_cmax = 0;
    std::string tri_out;
    tri->add_option("--c-max", tri_cmax, "largest hypotenuse to include")->required();
    tri->add_option("--out", tri_out, "write to this file instead of stdout");

    auto* opt = app.add_subcommand("optimize", "Search coupling space for complete transfer");
    double opt_tau = 0.0;
    std::vector<double> opt_bounds;
    std::uint64_t opt_seed = 0;
    bool opt_diamond = false;
    int opt_starts = 32;
    std::string opt_out;
    opt->add_option("--tau", opt_tau, "target transfer time")->required();
    opt->add_option("--bounds", opt_bounds, "coupling box lo,hi")->delimiter(',')->required();
    opt->add_option("--seed", opt_seed, "seed for the multistart generator");
    opt->add_flag("--diamond", opt_diamond, "search v14 too instead of pinning it to 0");
    opt->add_option("--starts", opt_starts, "number of multistart runs");
    opt->add_option("--out", opt_out, "write to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(sim)) {
            cmd_simulate(sim_c, sim_tmax, sim_steps, sim_format, sim_out);
        } else if (app.got_subcommand(des)) {
            if (des_triple_opt->count())
                cmd_design(pair_from_triple(des_triple), des_tau, des_out);
            else if (des_p_opt->count())
                cmd_design(quartet::OddPair(des_p, des_q), des_tau, des_out);
            else
                throw quartet::InvalidInput("design: give either --p and --q or --triple");
        } else if (app.got_subcommand(det)) {
            cmd_detect(det_c, det_tol, det_out);
        } else if (app.got_subcommand(tri)) {
            cmd_triples(tri_cmax, tri_out);
        } else if (app.got_subcommand(opt)) {
            cmd_optimize(opt_tau, opt_bounds, opt_seed, opt_diamond, opt_starts, opt_out);
        }
    } catch (const quartet::NumericalFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const quartet::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
