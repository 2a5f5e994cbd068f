// Acceptance suite: end-to-end numeric anchors for the Lindstedt series
// implementation. One [PASS]/[FAIL] line per criterion; exit status is the
// number of failed criteria.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <vector>

#include "fpu/compare.hpp"
#include "fpu/integrate.hpp"
#include "fpu/lattice.hpp"
#include "fpu/lindstedt.hpp"
#include "oracles.hpp"

namespace {

int g_failures = 0;

void report(int id, const char* what, bool ok, const std::string& detail = "") {
    std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", id, what,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
}

const fpu::LatticeConfig kExampleCfg{2, 0.1, 1e-9};
const fpu::ModeState kExampleIcs{{0.1, 1.0}, {0.1, 0.0}};

// Early-time agreement bound, frozen from the first verified comparison run
// (max abs error over t in [0,20] was ~6.2e-2 for the N=2 configuration;
// consistent with the linear phase drift that crosses 0.1 near t = 32).
constexpr double kEarlyTimeErrorBound = 8e-2;

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- criterion 1 -----------------------------------------------------------
void criterion_rho_values() {
    const auto t0 = std::chrono::steady_clock::now();
    std::ostringstream os;
    const fpu::ReproN2Result res = fpu::repro_n2(os, 20.0, 0.1, 1e-3);
    const double dt = elapsed_s(t0);
    const bool rho2 = std::abs(res.shift.rho[1] - 113.0 / 200.0) < 1e-12;
    const bool rho1 = std::abs(res.shift.rho[0] - 0.37875) < 1e-12;
    const bool bw1 = std::abs(res.shift.beta[0] * fpu::omega(1, 2) - 1.037875) < 1e-12;
    const bool printed = os.str().find("0.565") != std::string::npos &&
                         os.str().find("303/808") != std::string::npos;
    char buf[128];
    std::snprintf(buf, sizeof buf, "rho = (%.10g, %.10g), %.2fs", res.shift.rho[0],
                  res.shift.rho[1], dt);
    report(1, "repro-n2 frequency shifts", rho1 && rho2 && bw1 && printed && dt < 1.0, buf);
}

// --- criterion 2 -----------------------------------------------------------
void criterion_eom_coefficients() {
    const fpu::CouplingTensor tensor(2);
    const double eps = 1.0;
    const fpu::LatticeConfig cfg{2, eps, 1e-9};
    auto f = [&](double q1, double q2) { return fpu::eom_rhs(std::vector<double>{q1, q2}, cfg, tensor); };
    // mode 1: qdd1 = -q1 + eps*(c30 q1^3 + c12 q1 q2^2)
    const double c30 = f(1, 0)[0] + 1.0;
    const double c12 = f(1, 1)[0] + 1.0 - c30;
    // mode 2: qdd2 = -3 q2 + eps*(c03 q2^3 + c21 q1^2 q2)
    const double c03 = f(0, 1)[1] + 3.0;
    const double c21 = f(1, 1)[1] + 3.0 - c03;
    const bool ok = std::abs(c30 + 0.5) < 1e-14 && std::abs(c12 + 1.5) < 1e-14 &&
                    std::abs(c03 + 4.5) < 1e-14 && std::abs(c21 + 1.5) < 1e-14;
    char buf[160];
    std::snprintf(buf, sizeof buf, "mode1 (%.17g, %.17g), mode2 (%.17g, %.17g)", c30, c12, c03,
                  c21);
    report(2, "N=2 cubic EOM coefficients -1/2,-3/2 and -9/2,-3/2", ok, buf);
}

// --- criterion 3 -----------------------------------------------------------
void criterion_q11_harmonics() {
    const fpu::CouplingTensor tensor(2);
    auto [table, rep] = fpu::restricted_terms(1, kExampleIcs, kExampleCfg, tensor);
    bool found = false;
    double amp_cos1 = 0.0, amp_cos3 = 0.0;
    for (const auto& t : table.terms) {
        if (t.l == 1 && t.m == 1 && t.n == 1 && t.channel == fpu::Channel::Cos &&
            std::abs(t.alpha - 3.0) < 1e-12) {
            const double coef =
                t.prefactor * t.bracket / ((t.alpha + table.omega_k) * (t.alpha - table.omega_k));
            amp_cos1 = kExampleCfg.epsilon * coef;         // on cos(omega_1 t) = cos(t)
            amp_cos3 = -kExampleCfg.epsilon * coef;        // on cos(3t)
            found = true;
        }
    }
    const bool ok = found && std::abs(amp_cos1 - 1.0 / 320000.0) < 1e-12 &&
                    std::abs(amp_cos3 + 1.0 / 320000.0) < 1e-12;
    char buf[96];
    std::snprintf(buf, sizeof buf, "cos(t): %.12g, cos(3t): %.12g", amp_cos1, amp_cos3);
    report(3, "Q_{1,1} carries +-1/320000 on cos(t)/cos(3t)", ok, buf);
}

// --- criterion 4 (plus the figure-level anchors) ----------------------------
void criterion_divergence_time() {
    const auto t0 = std::chrono::steady_clock::now();
    fpu::IntegratorConfig icfg;
    icfg.dt = 1e-3;
    icfg.t_max = 100.0;
    icfg.sample_every = 20;
    const fpu::CompareResult res = fpu::run_compare(kExampleCfg, kExampleIcs, 100.0, 0.1, icfg);
    const double dt = elapsed_s(t0);
    const bool has = res.report.divergence_time.has_value();
    const double tdiv = has ? *res.report.divergence_time : -1.0;
    const bool ok = has && tdiv >= 25.0 && tdiv <= 60.0 && dt < 30.0;
    char buf[96];
    std::snprintf(buf, sizeof buf, "divergence at t = %.3g, %.2fs", tdiv, dt);
    report(4, "divergence time in [25, 60] at threshold 0.1", ok, buf);

    const bool r2ok = res.report.phase_fit_r2 > 0.9;
    std::snprintf(buf, sizeof buf, "R^2 = %.4f, rate = %.4g rad/t", res.report.phase_fit_r2,
                  res.report.phase_drift_rate);
    report(4, "phase drift is linear in time (fit R^2 > 0.9)", r2ok, buf);

    fpu::IntegratorConfig early = icfg;
    early.t_max = 20.0;
    const fpu::CompareResult res20 = fpu::run_compare(kExampleCfg, kExampleIcs, 20.0, 0.1, early);
    const double emax =
        *std::max_element(res20.report.max_abs_err.begin(), res20.report.max_abs_err.end());
    std::snprintf(buf, sizeof buf, "max abs err %.4g (bound %.1g)", emax, kEarlyTimeErrorBound);
    report(4, "early-time curves agree on [0, 20]", emax < kEarlyTimeErrorBound, buf);
}

// --- criterion 5 -----------------------------------------------------------
// Merge equal-frequency channels so the driven-oscillator oracle evaluates
// one sinusoid per distinct frequency.
struct MergedForcing {
    std::vector<double> freq, cos_amp, sin_amp;

    explicit MergedForcing(const fpu::ModeTermTable& table) {
        std::map<long long, std::size_t> slot;
        for (const auto& t : table.terms) {
            double a = t.alpha;
            double c = t.prefactor * t.bracket;
            double sgn = 1.0;
            if (a < 0.0) {
                a = -a;
                sgn = -1.0;  // sin(-at) = -sin(at)
            }
            const long long key = std::llround(a * 1e12);
            auto [it, inserted] = slot.try_emplace(key, freq.size());
            if (inserted) {
                freq.push_back(a);
                cos_amp.push_back(0.0);
                sin_amp.push_back(0.0);
            }
            if (t.channel == fpu::Channel::Cos) {
                cos_amp[it->second] += c;
            } else {
                sin_amp[it->second] += sgn * c;
            }
        }
    }

    double operator()(double t) const {
        double f = 0.0;
        for (std::size_t i = 0; i < freq.size(); ++i) {
            f += cos_amp[i] * std::cos(freq[i] * t) + sin_amp[i] * std::sin(freq[i] * t);
        }
        return f;
    }
};

void criterion_q1_oracle() {
    std::mt19937 rng(13579);
    double worst = 0.0;
    bool ok = true;
    for (int n : {2, 3, 5}) {
        const fpu::LatticeConfig cfg{n, 0.1, 1e-9};
        const fpu::CouplingTensor tensor(n);
        for (int trial = 0; trial < 5; ++trial) {
            const fpu::ModeState ics = oracles::random_state(n, rng, 0.8);
            for (int k = 1; k <= n; ++k) {
                auto [table, rep] = fpu::restricted_terms(k, ics, cfg, tensor);
                const MergedForcing forcing(table);
                fpu::IntegratorConfig icfg;
                icfg.dt = 2e-3;
                icfg.t_max = 100.0;
                icfg.sample_every = 50;
                const fpu::Trajectory traj =
                    fpu::integrate_driven([&forcing](double t) { return forcing(t); },
                                          table.omega_k, icfg);
                for (std::size_t i = 0; i < traj.times.size(); ++i) {
                    const auto [v, d] = fpu::q1_eval(table, traj.times[i]);
                    worst = std::max(worst, std::abs(v - traj.q[i][0]));
                }
            }
        }
    }
    ok = worst < 1e-6;
    char buf[64];
    std::snprintf(buf, sizeof buf, "max abs deviation %.3g", worst);
    report(5, "q1_eval matches the driven-oscillator oracle (N = 2, 3, 5)", ok, buf);
}

// --- criterion 6 -----------------------------------------------------------
double max_series_residual(const fpu::LatticeConfig& cfg, const fpu::ModeState& ics,
                           const fpu::CouplingTensor& tensor) {
    const fpu::SeriesSolution sol(cfg, ics, tensor);
    const double h = 1e-4;
    double worst = 0.0;
    for (double t = 0.5; t <= 10.0; t += 0.5) {
        const fpu::ModeState now = sol.eval(t);
        const auto rhs = fpu::eom_rhs(now.Q, cfg, tensor);
        for (int k = 1; k <= cfg.n; ++k) {
            auto qk = [&](double tt) { return sol.eval(tt).Q[static_cast<std::size_t>(k - 1)]; };
            const double qdd = oracles::second_derivative(qk, t, h);
            worst = std::max(worst, std::abs(qdd - rhs[static_cast<std::size_t>(k - 1)]));
        }
    }
    return worst;
}

void criterion_residual_scaling() {
    bool ok = true;
    std::string detail;
    // Moderate amplitudes: at the full N=2 worked-example amplitude the
    // O(eps^3) remainder is large enough at eps = 0.1 to drag the first
    // halving ratio below 3.4.
    const fpu::ModeState ics2{{0.05, 0.5}, {0.05, 0.0}};
    const fpu::ModeState ics5{{0.6, 0.4, -0.5, 0.3, 0.2}, {0.1, -0.2, 0.15, 0.0, 0.05}};
    struct Case {
        int n;
        const fpu::ModeState* ics;
    };
    const Case cases[] = {{2, &ics2}, {5, &ics5}};
    for (const Case& c : cases) {
        const fpu::CouplingTensor tensor(c.n);
        double prev = max_series_residual({c.n, 0.1, 1e-9}, *c.ics, tensor);
        for (double eps : {0.05, 0.025}) {
            const double cur = max_series_residual({c.n, eps, 1e-9}, *c.ics, tensor);
            const double ratio = prev / cur;
            char buf[64];
            std::snprintf(buf, sizeof buf, "N=%d eps=%.3g ratio %.3f; ", c.n, eps, ratio);
            detail += buf;
            if (!(ratio > 3.4 && ratio < 4.6)) ok = false;
            prev = cur;
        }
    }
    report(6, "EOM residual drops ~4x per halving of epsilon", ok, detail);
}

// --- criterion 7 -----------------------------------------------------------
void criterion_property_suite() {
    bool ok = true;
    std::string detail;
    std::mt19937 rng(24680);

    // transform involution
    for (int n = 1; n <= 32 && ok; ++n) {
        const fpu::ModeState x = oracles::random_state(n, rng);
        const fpu::ModeState back = fpu::site_to_mode(fpu::mode_to_site(x));
        for (int k = 0; k < n; ++k) {
            if (std::abs(back.Q[static_cast<std::size_t>(k)] - x.Q[static_cast<std::size_t>(k)]) >
                1e-12 * (1.0 + std::abs(x.Q[static_cast<std::size_t>(k)]))) {
                ok = false;
                detail += "involution; ";
                break;
            }
        }
    }

    // energy-form equivalence
    for (int n = 1; n <= 16 && ok; ++n) {
        const fpu::LatticeConfig cfg{n, 0.3, 1e-9};
        const fpu::CouplingTensor tensor(n);
        const fpu::ModeState s = oracles::random_state(n, rng);
        const double hm = fpu::energy_mode(s, cfg, tensor);
        const double hs = fpu::energy_site(fpu::mode_to_site(s), cfg);
        if (std::abs(hm - hs) > 1e-10 * std::abs(hs)) {
            ok = false;
            detail += "energy equivalence; ";
        }
    }

    // coupling symmetry, exhaustive N <= 8
    for (int n = 1; n <= 8 && ok; ++n) {
        for (int a = 1; a <= n && ok; ++a)
            for (int b = a; b <= n && ok; ++b)
                for (int c = b; c <= n && ok; ++c)
                    for (int d = c; d <= n && ok; ++d) {
                        std::array<int, 4> idx{a, b, c, d};
                        const int ref = fpu::coupling(a, b, c, d, n);
                        std::sort(idx.begin(), idx.end());
                        do {
                            if (fpu::coupling(idx[0], idx[1], idx[2], idx[3], n) != ref) {
                                ok = false;
                                detail += "coupling symmetry; ";
                                break;
                            }
                        } while (std::next_permutation(idx.begin(), idx.end()));
                    }
    }

    // zero-IC particular solution + IC exactness
    for (int n : {2, 5, 11}) {
        const fpu::LatticeConfig cfg{n, 0.2, 1e-9};
        const fpu::CouplingTensor tensor(n);
        const fpu::ModeState ics = oracles::random_state(n, rng);
        for (int k = 1; k <= n; ++k) {
            auto [table, rep] = fpu::restricted_terms(k, ics, cfg, tensor);
            const auto [v, d] = fpu::q1_eval(table, 0.0);
            if (v != 0.0 || d != 0.0) {
                ok = false;
                detail += "zero-IC particular; ";
            }
        }
        const fpu::SeriesSolution sol(cfg, ics, tensor);
        const fpu::ModeState at0 = sol.eval(0.0);
        for (int k = 0; k < n; ++k) {
            if (std::abs(at0.Q[static_cast<std::size_t>(k)] - ics.Q[static_cast<std::size_t>(k)]) >
                    1e-12 ||
                std::abs(at0.Qdot[static_cast<std::size_t>(k)] -
                         ics.Qdot[static_cast<std::size_t>(k)]) > 1e-12) {
                ok = false;
                detail += "IC exactness; ";
            }
        }
    }

    // Green's-function identities vs quadrature
    std::uniform_real_distribution<double> ua(0.05, 5.0), uw(0.3, 1.99), ut(0.1, 10.0);
    for (int rep = 0; rep < 10; ++rep) {
        const double w = uw(rng);
        double a = ua(rng);
        if (std::abs(a - w) < 0.05) a += 0.1;
        const double t = ut(rng);
        const double cq = oracles::integrate(
            [&](double s) { return std::cos(a * s) * std::sin(w * (t - s)) / w; }, 0.0, t);
        const double cc = (std::cos(w * t) - std::cos(a * t)) / ((a + w) * (a - w));
        const double sq = oracles::integrate(
            [&](double s) { return std::sin(a * s) * std::sin(w * (t - s)) / w; }, 0.0, t);
        const double sc = (std::sin(w * t) * a - std::sin(a * t) * w) / (w * (a + w) * (a - w));
        if (std::abs(cq - cc) > 1e-9 || std::abs(sq - sc) > 1e-9) {
            ok = false;
            detail += "Green identities; ";
        }
    }

    report(7, "property suite", ok, detail);
}

// --- criterion 8 -----------------------------------------------------------
void criterion_oracle_quality() {
    const fpu::CouplingTensor tensor(2);

    fpu::IntegratorConfig rk;
    rk.dt = 1e-3;
    rk.t_max = 100.0;
    rk.sample_every = 1000;
    rk.energy_monitor = true;
    const fpu::Trajectory a = fpu::integrate(kExampleIcs, kExampleCfg, tensor, rk);
    double drift_rk = 0.0;
    for (double h : *a.energy) drift_rk = std::max(drift_rk, std::abs(h - a.energy->front()));
    drift_rk /= std::abs(a.energy->front());

    fpu::IntegratorConfig lf;
    lf.dt = 1e-2;
    lf.t_max = 1e4;
    lf.sample_every = 10000;
    lf.method = fpu::Method::SymplecticLeapfrog;
    lf.energy_monitor = true;
    const fpu::Trajectory b = fpu::integrate(kExampleIcs, kExampleCfg, tensor, lf);
    double drift_lf = 0.0;
    for (double h : *b.energy) drift_lf = std::max(drift_lf, std::abs(h - b.energy->front()));
    drift_lf /= std::abs(b.energy->front());

    const bool ok = drift_rk < 1e-8 && drift_lf < 1e-3;
    char buf[96];
    std::snprintf(buf, sizeof buf, "RK4 drift %.3g, leapfrog drift %.3g", drift_rk, drift_lf);
    report(8, "oracle energy conservation", ok, buf);
}

}  // namespace

int main() {
    criterion_rho_values();
    criterion_eom_coefficients();
    criterion_q11_harmonics();
    criterion_divergence_time();
    criterion_q1_oracle();
    criterion_residual_scaling();
    criterion_property_suite();
    criterion_oracle_quality();
    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
    } else {
        std::printf("%d criterion(s) failed\n", g_failures);
    }
    return g_failures;
}
