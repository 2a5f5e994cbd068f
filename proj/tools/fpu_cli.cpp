// Command-line driver for the FPU-beta Lindstedt series and its numeric
// oracles. Subcommands: spectrum, coupling, rho, series, integrate, compare,
// repro-n2. Exit codes: 0 ok, 1 runtime failure, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fpu/compare.hpp"
#include "fpu/integrate.hpp"
#include "fpu/lattice.hpp"
#include "fpu/lindstedt.hpp"

namespace {

struct CommonOpts {
    int n = 2;
    double epsilon = 0.0;
    double resonance_tol = 1e-9;
    std::string q0, p0, ics_file;
    double t_max = 100.0;
    double dt = 1e-3;
    int samples = 1000;
    bool self_consistent = false;
    std::string out;
    std::string format = "csv";
};

void add_lattice_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--n", o.n, "lattice size N")->check(CLI::PositiveNumber);
    cmd->add_option("--epsilon", o.epsilon, "quartic coupling strength")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--resonance-tol", o.resonance_tol, "resonance classification tolerance");
}

void add_ics_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--q0", o.q0, "initial mode positions, comma list");
    cmd->add_option("--p0", o.p0, "initial mode velocities, comma list");
    cmd->add_option("--ics-file", o.ics_file, "file with one 'Q Qdot' line per mode");
}

void add_grid_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--t-max", o.t_max, "time horizon")->check(CLI::PositiveNumber);
    cmd->add_option("--dt", o.dt, "integrator step")->check(CLI::PositiveNumber);
    cmd->add_option("--samples", o.samples, "number of output samples")
        ->check(CLI::PositiveNumber);
}

void add_out_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--out", o.out, "output path (default stdout)");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        const double v = std::stod(item, &pos);
        if (pos != item.size()) throw std::invalid_argument("malformed number: " + item);
        out.push_back(v);
    }
    return out;
}

fpu::ModeState load_ics(const CommonOpts& o) {
    fpu::ModeState ics;
    if (!o.ics_file.empty()) {
        std::ifstream in(o.ics_file);
        if (!in) throw CLI::ValidationError("--ics-file", "cannot open " + o.ics_file);
        double q, p;
        while (in >> q >> p) {
            ics.Q.push_back(q);
            ics.Qdot.push_back(p);
        }
        if (!in.eof()) throw CLI::ValidationError("--ics-file", "malformed line in " + o.ics_file);
    } else {
        if (!o.q0.empty()) ics.Q = parse_list(o.q0);
        if (!o.p0.empty()) ics.Qdot = parse_list(o.p0);
        if (ics.Q.empty()) ics.Q.assign(static_cast<std::size_t>(o.n), 0.0);
        if (ics.Qdot.empty()) ics.Qdot.assign(static_cast<std::size_t>(o.n), 0.0);
    }
    if (static_cast<int>(ics.Q.size()) != o.n || ics.Q.size() != ics.Qdot.size()) {
        throw CLI::ValidationError("initial conditions", "expected " + std::to_string(o.n) +
                                                             " modes of (Q, Qdot) values");
    }
    return ics;
}

std::ostream& open_out(const CommonOpts& o, std::ofstream& file) {
    if (o.out.empty()) return std::cout;
    file.open(o.out);
    if (!file) throw std::runtime_error("cannot open output file " + o.out);
    return file;
}

// Sample grid aligned with integrator steps: sample_every = steps/samples.
fpu::IntegratorConfig make_icfg(const CommonOpts& o, fpu::Method method,
                                bool energy_monitor = false) {
    fpu::IntegratorConfig icfg;
    icfg.dt = o.dt;
    icfg.t_max = o.t_max;
    icfg.method = method;
    icfg.energy_monitor = energy_monitor;
    const long steps = icfg.step_count();
    long every = steps / o.samples;
    if (every < 1) every = 1;
    while (steps % every != 0) --every;
    icfg.sample_every = static_cast<int>(every);
    return icfg;
}

void print_value(std::ostream& os, double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    os << buf;
}

int cli_main(int argc, char** argv) {
    CLI::App app{"Lindstedt-series and numeric solutions of the fixed-end FPU-beta lattice"};
    app.require_subcommand(1);

    CommonOpts o;

    auto* spectrum_cmd = app.add_subcommand("spectrum", "print the linear mode frequencies");
    add_lattice_flags(spectrum_cmd, o);
    add_out_flags(spectrum_cmd, o);

    auto* coupling_cmd =
        app.add_subcommand("coupling", "print coupling coefficients C_klmn");
    add_lattice_flags(coupling_cmd, o);
    add_out_flags(coupling_cmd, o);
    std::string indices;
    coupling_cmd->add_option("--indices", indices,
                             "k,l,m,n (omit to dump all nonzero entries)");

    auto* rho_cmd = app.add_subcommand("rho", "print frequency shifts rho_k and beta_k");
    add_lattice_flags(rho_cmd, o);
    add_ics_flags(rho_cmd, o);
    add_out_flags(rho_cmd, o);
    rho_cmd->add_flag("--self-consistent", o.self_consistent,
                      "solve the coupled system instead of the first-order form");

    auto* series_cmd = app.add_subcommand("series", "sample the perturbative solution");
    add_lattice_flags(series_cmd, o);
    add_ics_flags(series_cmd, o);
    add_grid_flags(series_cmd, o);
    add_out_flags(series_cmd, o);
    series_cmd->add_flag("--self-consistent", o.self_consistent);
    std::string dump_terms;
    series_cmd->add_option("--dump-terms", dump_terms, "write the retained term table here");

    auto* integrate_cmd = app.add_subcommand("integrate", "sample the numeric solution");
    add_lattice_flags(integrate_cmd, o);
    add_ics_flags(integrate_cmd, o);
    add_grid_flags(integrate_cmd, o);
    add_out_flags(integrate_cmd, o);
    std::string method = "rk4";
    integrate_cmd->add_option("--method", method, "rk4 | leapfrog")
        ->check(CLI::IsMember({"rk4", "leapfrog"}));
    bool energy = false;
    integrate_cmd->add_flag("--energy", energy, "record the Hamiltonian per sample");

    auto* compare_cmd =
        app.add_subcommand("compare", "series vs numeric comparison with error metrics");
    add_lattice_flags(compare_cmd, o);
    add_ics_flags(compare_cmd, o);
    add_grid_flags(compare_cmd, o);
    add_out_flags(compare_cmd, o);
    compare_cmd->add_flag("--self-consistent", o.self_consistent);
    double threshold = 0.1;
    compare_cmd->add_option("--threshold", threshold, "divergence threshold, mode amplitude");
    std::string report_path;
    compare_cmd->add_option("--report", report_path, "write the JSON report here");

    auto* repro_cmd = app.add_subcommand("repro-n2", "reproduce the N=2 worked example");
    repro_cmd->add_option("--t-max", o.t_max, "comparison horizon");
    repro_cmd->add_option("--dt", o.dt, "integrator step");
    repro_cmd->add_option("--out", o.out, "write comparison data here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        std::ofstream file;
        if (spectrum_cmd->parsed()) {
            std::ostream& os = open_out(o, file);
            const auto w = fpu::spectrum(o.n);
            if (o.format == "json") {
                os << nlohmann::json(w).dump() << "\n";
            } else {
                for (double x : w) {
                    print_value(os, x);
                    os << "\n";
                }
            }
        } else if (coupling_cmd->parsed()) {
            std::ostream& os = open_out(o, file);
            if (!indices.empty()) {
                const auto v = parse_list(indices);
                if (v.size() != 4) throw CLI::ValidationError("--indices", "need k,l,m,n");
                os << fpu::coupling(static_cast<int>(v[0]), static_cast<int>(v[1]),
                                    static_cast<int>(v[2]), static_cast<int>(v[3]), o.n)
                   << "\n";
            } else {
                const fpu::CouplingTensor tensor(o.n);
                os << "k l m n C\n";
                for (int k = 1; k <= o.n; ++k) {
                    for (std::size_t e = tensor.offset(k); e < tensor.offset_end(k); ++e) {
                        const int l = tensor.l_idx()[e] + 1;
                        const int m = tensor.m_idx()[e] + 1;
                        const int nn = tensor.n_idx()[e] + 1;
                        os << k << ' ' << l << ' ' << m << ' ' << nn << ' '
                           << fpu::coupling(k, l, m, nn, o.n) << "\n";
                    }
                }
            }
        } else if (rho_cmd->parsed()) {
            std::ostream& os = open_out(o, file);
            const fpu::LatticeConfig cfg{o.n, o.epsilon, o.resonance_tol};
            const fpu::ModeState ics = load_ics(o);
            const fpu::CouplingTensor tensor(o.n);
            const fpu::FrequencyShift shift =
                o.self_consistent ? fpu::rho_self_consistent(ics, cfg, tensor)
                                  : fpu::rho_first_order(ics, cfg, tensor);
            if (o.format == "json") {
                nlohmann::json j;
                j["rho"] = shift.rho;
                j["beta"] = shift.beta;
                os << j.dump(2) << "\n";
            } else {
                os << "rho:";
                for (double x : shift.rho) {
                    os << ' ';
                    print_value(os, x);
                }
                os << "\nbeta:";
                for (double x : shift.beta) {
                    os << ' ';
                    print_value(os, x);
                }
                os << "\n";
            }
        } else if (series_cmd->parsed()) {
            std::ostream& os = open_out(o, file);
            const fpu::LatticeConfig cfg{o.n, o.epsilon, o.resonance_tol};
            const fpu::ModeState ics = load_ics(o);
            const fpu::CouplingTensor tensor(o.n);
            const fpu::SeriesSolution sol(cfg, ics, tensor,
                                          o.self_consistent ? fpu::ShiftMethod::SelfConsistent
                                                            : fpu::ShiftMethod::FirstOrder);
            if (!dump_terms.empty()) {
                std::ofstream tf(dump_terms);
                if (!tf) throw std::runtime_error("cannot open " + dump_terms);
                std::vector<fpu::ModeTermTable> tables;
                for (int k = 1; k <= o.n; ++k) tables.push_back(sol.terms(k));
                fpu::dump_term_table(tf, tables);
            }
            fpu::Trajectory traj;
            for (int i = 0; i <= o.samples; ++i) {
                const double t = o.t_max * i / o.samples;
                const fpu::ModeState s = sol.eval(t);
                traj.times.push_back(t);
                traj.q.push_back(s.Q);
                traj.qdot.push_back(s.Qdot);
            }
            fpu::write_trajectory(os, traj);
        } else if (integrate_cmd->parsed()) {
            std::ostream& os = open_out(o, file);
            const fpu::LatticeConfig cfg{o.n, o.epsilon, o.resonance_tol};
            const fpu::ModeState ics = load_ics(o);
            const fpu::CouplingTensor tensor(o.n);
            const fpu::IntegratorConfig icfg = make_icfg(
                o, method == "leapfrog" ? fpu::Method::SymplecticLeapfrog : fpu::Method::RK4Fixed,
                energy);
            fpu::write_trajectory(os, fpu::integrate(ics, cfg, tensor, icfg));
        } else if (compare_cmd->parsed()) {
            std::ostream& os = open_out(o, file);
            const fpu::LatticeConfig cfg{o.n, o.epsilon, o.resonance_tol};
            const fpu::ModeState ics = load_ics(o);
            const fpu::IntegratorConfig icfg = make_icfg(o, fpu::Method::RK4Fixed);
            const fpu::CompareResult res =
                fpu::run_compare(cfg, ics, o.t_max, threshold, icfg,
                                 o.self_consistent ? fpu::ShiftMethod::SelfConsistent
                                                   : fpu::ShiftMethod::FirstOrder);
            if (o.format == "json") {
                fpu::write_report_json(os, res.report);
            } else {
                fpu::write_compare_csv(os, res);
                fpu::write_report_text(std::cerr, res.report);
            }
            if (!report_path.empty()) {
                std::ofstream rf(report_path);
                if (!rf) throw std::runtime_error("cannot open " + report_path);
                fpu::write_report_json(rf, res.report);
            }
        } else if (repro_cmd->parsed()) {
            const fpu::ReproN2Result res = fpu::repro_n2(std::cout, o.t_max, 0.1, o.dt);
            if (!o.out.empty()) {
                std::ofstream cf(o.out);
                if (!cf) throw std::runtime_error("cannot open " + o.out);
                fpu::write_compare_csv(cf, res.comparison);
            }
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) { return cli_main(argc, argv); }
