#include "fpu/compare.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace fpu {

namespace {

struct PhaseFit {
    double rate = 0.0;  // rad per unit time
    double r2 = 1.0;
};

std::vector<double> zero_crossings(const std::vector<double>& t, const std::vector<double>& y) {
    std::vector<double> out;
    for (std::size_t i = 1; i < t.size(); ++i) {
        if ((y[i - 1] < 0.0 && y[i] >= 0.0) || (y[i - 1] > 0.0 && y[i] <= 0.0)) {
            const double f = y[i - 1] / (y[i - 1] - y[i]);
            out.push_back(t[i - 1] + f * (t[i] - t[i - 1]));
        }
    }
    return out;
}

// Offsets between matched zero-crossing times of the numeric and series
// curves, fit to a line; slope times the effective angular frequency is the
// phase drift in rad per unit time.
PhaseFit fit_phase_drift(const std::vector<double>& times, const std::vector<double>& series,
                         const std::vector<double>& numeric, double omega_eff) {
    const auto ts = zero_crossings(times, series);
    const auto tn = zero_crossings(times, numeric);
    const std::size_t n = std::min(ts.size(), tn.size());
    PhaseFit fit;
    if (n < 3) return fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = ts[i], y = tn[i] - ts[i];
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double dn = static_cast<double>(n);
    const double det = dn * sxx - sx * sx;
    if (det == 0.0) return fit;
    const double slope = (dn * sxy - sx * sy) / det;
    const double intercept = (sy - slope * sx) / dn;
    double ss_res = 0, ss_tot = 0;
    const double mean = sy / dn;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = ts[i], y = tn[i] - ts[i];
        const double e = y - (intercept + slope * x);
        ss_res += e * e;
        ss_tot += (y - mean) * (y - mean);
    }
    fit.rate = slope * omega_eff;
    fit.r2 = (ss_tot > 1e-24) ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

void fmt(std::ostream& os, double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    os << buf;
}

}  // namespace

CompareResult run_compare(const LatticeConfig& cfg, const ModeState& ics, double horizon,
                          double threshold, const IntegratorConfig& icfg, ShiftMethod method) {
    cfg.validate();
    IntegratorConfig run_cfg = icfg;
    run_cfg.t_max = horizon;
    run_cfg.validate();

    const CouplingTensor tensor(cfg.n);
    SeriesSolution series(cfg, ics, tensor, method);
    Trajectory num = integrate(ics, cfg, tensor, run_cfg);

    const int n = cfg.n;
    CompareResult res;
    res.times = num.times;
    res.q_num = num.q;
    res.q_series.reserve(num.times.size());

    ComparisonReport& rep = res.report;
    rep.horizon = horizon;
    rep.threshold = threshold;
    rep.rho = series.shift().rho;
    rep.beta = series.shift().beta;
    rep.max_abs_err.assign(static_cast<std::size_t>(n), 0.0);
    rep.rms.assign(static_cast<std::size_t>(n), 0.0);

    for (std::size_t i = 0; i < num.times.size(); ++i) {
        const ModeState s = series.eval(num.times[i]);
        res.q_series.push_back(s.Q);
        double max_diff = 0.0;
        for (int k = 0; k < n; ++k) {
            const double d = std::abs(s.Q[static_cast<std::size_t>(k)] -
                                      num.q[i][static_cast<std::size_t>(k)]);
            auto& me = rep.max_abs_err[static_cast<std::size_t>(k)];
            me = std::max(me, d);
            rep.rms[static_cast<std::size_t>(k)] += d * d;
            max_diff = std::max(max_diff, d);
        }
        if (!rep.divergence_time && max_diff > threshold) {
            rep.divergence_time = num.times[i];
        }
    }
    for (auto& r : rep.rms) r = std::sqrt(r / static_cast<double>(num.times.size()));

    // Dominant mode by harmonic amplitude of the initial data.
    int dominant = 1;
    double best = -1.0;
    for (int k = 1; k <= n; ++k) {
        const double wk = omega(k, n);
        const double a = ics.Q[static_cast<std::size_t>(k - 1)];
        const double b = ics.Qdot[static_cast<std::size_t>(k - 1)] / wk;
        const double amp = std::sqrt(a * a + b * b);
        if (amp > best) {
            best = amp;
            dominant = k;
        }
    }
    std::vector<double> ys(num.times.size()), yn(num.times.size());
    for (std::size_t i = 0; i < num.times.size(); ++i) {
        ys[i] = res.q_series[i][static_cast<std::size_t>(dominant - 1)];
        yn[i] = num.q[i][static_cast<std::size_t>(dominant - 1)];
    }
    const double omega_eff =
        omega(dominant, n) * series.shift().beta[static_cast<std::size_t>(dominant - 1)];
    const PhaseFit fit = fit_phase_drift(num.times, ys, yn, omega_eff);
    rep.phase_drift_rate = fit.rate;
    rep.phase_fit_r2 = fit.r2;
    return res;
}

void write_compare_csv(std::ostream& os, const CompareResult& res) {
    const std::size_t n = res.q_series.empty() ? 0 : res.q_series.front().size();
    os << "t";
    for (std::size_t k = 1; k <= n; ++k) os << ",Q" << k << "_series";
    for (std::size_t k = 1; k <= n; ++k) os << ",Q" << k << "_num";
    for (std::size_t k = 1; k <= n; ++k) os << ",diff" << k;
    os << "\n";
    for (std::size_t i = 0; i < res.times.size(); ++i) {
        fmt(os, res.times[i]);
        for (std::size_t k = 0; k < n; ++k) {
            os << ',';
            fmt(os, res.q_series[i][k]);
        }
        for (std::size_t k = 0; k < n; ++k) {
            os << ',';
            fmt(os, res.q_num[i][k]);
        }
        for (std::size_t k = 0; k < n; ++k) {
            os << ',';
            fmt(os, res.q_series[i][k] - res.q_num[i][k]);
        }
        os << "\n";
    }
}

void write_report_json(std::ostream& os, const ComparisonReport& rep) {
    nlohmann::json j;
    j["max_abs_err"] = rep.max_abs_err;
    j["rms"] = rep.rms;
    j["phase_drift_rate"] = rep.phase_drift_rate;
    j["phase_fit_r2"] = rep.phase_fit_r2;
    if (rep.divergence_time) {
        j["divergence_time"] = *rep.divergence_time;
    } else {
        j["divergence_time"] = nullptr;
    }
    j["horizon"] = rep.horizon;
    j["threshold"] = rep.threshold;
    j["rho"] = rep.rho;
    j["beta"] = rep.beta;
    os << j.dump(2) << "\n";
}

void write_report_text(std::ostream& os, const ComparisonReport& rep) {
    os << "horizon: " << rep.horizon << "\n";
    os << "max_abs_err:";
    for (double x : rep.max_abs_err) {
        os << ' ';
        fmt(os, x);
    }
    os << "\nrms:";
    for (double x : rep.rms) {
        os << ' ';
        fmt(os, x);
    }
    os << "\nphase_drift_rate: ";
    fmt(os, rep.phase_drift_rate);
    os << " (fit r2 ";
    fmt(os, rep.phase_fit_r2);
    os << ")\ndivergence_time: ";
    if (rep.divergence_time) {
        fmt(os, *rep.divergence_time);
    } else {
        os << "not reached";
    }
    os << " (threshold ";
    fmt(os, rep.threshold);
    os << ")\nrho:";
    for (double x : rep.rho) {
        os << ' ';
        fmt(os, x);
    }
    os << "\nbeta:";
    for (double x : rep.beta) {
        os << ' ';
        fmt(os, x);
    }
    os << "\n";
}

ReproN2Result repro_n2(std::ostream& os, double horizon, double threshold, double dt) {
    LatticeConfig cfg{2, 0.1, 1e-9};
    ModeState ics{{0.1, 1.0}, {0.1, 0.0}};
    const CouplingTensor tensor(cfg.n);

    ReproN2Result out;
    out.shift = rho_first_order(ics, cfg, tensor);
    os << "N = 2, epsilon = 0.1, Q(0) = (0.1, 1), Qdot(0) = (0.1, 0)\n";
    for (int k = 1; k <= 2; ++k) {
        const double rho = out.shift.rho[static_cast<std::size_t>(k - 1)];
        const double bw = out.shift.beta[static_cast<std::size_t>(k - 1)] * omega(k, 2);
        os << "rho_" << k << " = ";
        fmt(os, rho);
        os << "  beta_" << k << "*omega_" << k << " = ";
        fmt(os, bw);
        os << "\n";
    }
    os << "note: rho_1 = 303/800; the alternatively quoted 303/808 is inconsistent with the\n"
          "      mode-1 effective frequency (8303/4000)*sin(pi/6) = 1.037875 and is not used.\n";

    for (int k = 1; k <= 2; ++k) {
        auto [table, rep] = restricted_terms(k, ics, cfg, tensor);
        out.tables.push_back(std::move(table));
        (void)rep;
    }
    for (const auto& table : out.tables) {
        os << "retained harmonics for mode " << table.k << " (" << table.terms.size()
           << " sub-terms):\n";
        dump_term_table(os, {table});
    }

    IntegratorConfig icfg;
    icfg.dt = dt;
    icfg.t_max = horizon;
    icfg.sample_every = 10;
    out.comparison = run_compare(cfg, ics, horizon, threshold, icfg);
    write_report_text(os, out.comparison.report);
    return out;
}

}  // namespace fpu
