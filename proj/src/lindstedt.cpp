#include "fpu/lindstedt.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace fpu {

namespace {

constexpr double kNearDenominatorWarn = 1e-4;

double rho_component(int k, const ModeState& ics, const LatticeConfig& cfg,
                     std::span<const double> beta_for_velocity) {
    const int n = cfg.n;
    const double wk = omega(k, n);
    const double qk = ics.Q[static_cast<std::size_t>(k - 1)];
    const double bk = beta_for_velocity[static_cast<std::size_t>(k - 1)];
    const double vk = ics.Qdot[static_cast<std::size_t>(k - 1)] / (bk * wk);
    double r = 3.0 * wk * wk / (16.0 * (n + 1)) * coupling(k, k, k, k, n) * (qk * qk + vk * vk);
    for (int m = 1; m <= n; ++m) {
        if (m == k) continue;
        const int c = coupling(k, k, m, m, n);
        if (c == 0) continue;
        const double wm = omega(m, n);
        const double qm = ics.Q[static_cast<std::size_t>(m - 1)];
        const double bm = beta_for_velocity[static_cast<std::size_t>(m - 1)];
        const double vm = ics.Qdot[static_cast<std::size_t>(m - 1)] / (bm * wm);
        r += 3.0 / (8.0 * (n + 1)) * wm * wm * c * (qm * qm + vm * vm);
    }
    return r;
}

void check_ics(const ModeState& ics, const LatticeConfig& cfg) {
    cfg.validate();
    if (static_cast<int>(ics.Q.size()) != cfg.n || ics.Q.size() != ics.Qdot.size())
        throw std::invalid_argument("initial conditions do not match lattice size");
}

}  // namespace

FrequencyShift rho_first_order(const ModeState& ics, const LatticeConfig& cfg,
                               const CouplingTensor& tensor) {
    check_ics(ics, cfg);
    (void)tensor;
    const int n = cfg.n;
    FrequencyShift shift;
    shift.method = ShiftMethod::FirstOrder;
    const std::vector<double> unit(static_cast<std::size_t>(n), 1.0);
    shift.rho.resize(static_cast<std::size_t>(n));
    shift.beta.resize(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        const double r = rho_component(k, ics, cfg, unit);
        shift.rho[static_cast<std::size_t>(k - 1)] = r;
        shift.beta[static_cast<std::size_t>(k - 1)] = 1.0 + cfg.epsilon * r;
    }
    return shift;
}

FrequencyShift rho_self_consistent(const ModeState& ics, const LatticeConfig& cfg,
                                   const CouplingTensor& tensor, int max_iter, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("rho_self_consistent: tol must be > 0");
    FrequencyShift shift = rho_first_order(ics, cfg, tensor);
    shift.method = ShiftMethod::SelfConsistent;
    const int n = cfg.n;
    std::vector<double> beta = shift.beta;
    double residual = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        residual = 0.0;
        for (int k = 1; k <= n; ++k) {
            const double r = rho_component(k, ics, cfg, beta);
            residual = std::max(residual, std::abs(r - shift.rho[static_cast<std::size_t>(k - 1)]));
            shift.rho[static_cast<std::size_t>(k - 1)] = r;
        }
        for (int k = 0; k < n; ++k) {
            beta[static_cast<std::size_t>(k)] =
                1.0 + cfg.epsilon * shift.rho[static_cast<std::size_t>(k)];
        }
        if (residual < tol) {
            shift.beta = beta;
            return shift;
        }
    }
    throw ShiftConvergenceError("rho_self_consistent: no convergence after " +
                                    std::to_string(max_iter) + " iterations, residual " +
                                    std::to_string(residual),
                                shift.rho, residual);
}

std::pair<double, double> q0_eval(int k, double t, const ModeState& ics,
                                  const FrequencyShift& shift, int lattice_n) {
    const double wk = omega(k, lattice_n);
    const double wb = wk * shift.beta[static_cast<std::size_t>(k - 1)];
    const double a = ics.Q[static_cast<std::size_t>(k - 1)];
    const double b = ics.Qdot[static_cast<std::size_t>(k - 1)] / wb;
    const double c = std::cos(wb * t), s = std::sin(wb * t);
    return {a * c + b * s, wb * (-a * s + b * c)};
}

std::pair<ModeTermTable, ResonanceReport> restricted_terms(int k, const ModeState& ics,
                                                           const LatticeConfig& cfg,
                                                           const CouplingTensor& tensor) {
    check_ics(ics, cfg);
    const int n = cfg.n;
    const double wk = omega(k, n);
    ModeTermTable table;
    table.k = k;
    table.omega_k = wk;
    ResonanceReport report;

    const auto w = spectrum(n);
    const auto li = tensor.l_idx();
    const auto mi = tensor.m_idx();
    const auto ni = tensor.n_idx();
    const auto wt = tensor.weight();

    for (std::size_t e = tensor.offset(k); e < tensor.offset_end(k); ++e) {
        const int l = li[e] + 1, m = mi[e] + 1, nn = ni[e] + 1;
        const double wl = w[static_cast<std::size_t>(l - 1)];
        const double wm = w[static_cast<std::size_t>(m - 1)];
        const double wn = w[static_cast<std::size_t>(nn - 1)];
        const double al = ics.Q[static_cast<std::size_t>(l - 1)];
        const double am = ics.Q[static_cast<std::size_t>(m - 1)];
        const double an = ics.Q[static_cast<std::size_t>(nn - 1)];
        const double bl = ics.Qdot[static_cast<std::size_t>(l - 1)] / wl;
        const double bm = ics.Qdot[static_cast<std::size_t>(m - 1)] / wm;
        const double bn = ics.Qdot[static_cast<std::size_t>(nn - 1)] / wn;
        // wt[e] = wl*wm*wn*C_klmn
        const double prefactor = -wk / (8.0 * (n + 1)) * wt[e];

        const double aaa = al * am * an;
        const double abb = al * bm * bn;
        const double bab = am * bl * bn;  // coefficient of a_m b_l b_n
        const double bba = an * bl * bm;
        const double bbb = bl * bm * bn;
        const double baa = bl * am * an;
        const double aba = al * bm * an;
        const double aab = al * am * bn;

        struct Sub {
            Channel ch;
            double alpha;
            double bracket;
        };
        const Sub subs[8] = {
            {Channel::Cos, wl + wm - wn, aaa + abb + bab - bba},
            {Channel::Cos, wl + wm + wn, aaa - abb - bab - bba},
            {Channel::Cos, wl - wm - wn, aaa - abb + bab + bba},
            {Channel::Cos, wl - wm + wn, aaa + abb - bab + bba},
            {Channel::Sin, wl + wm - wn, bbb + baa + aba - aab},
            {Channel::Sin, wl + wm + wn, -bbb + baa + aba + aab},
            {Channel::Sin, wl - wm - wn, -bbb + baa - aba - aab},
            {Channel::Sin, wl - wm + wn, bbb + baa - aba + aab},
        };

        for (const Sub& s : subs) {
            const double denom = s.alpha * s.alpha - wk * wk;
            if (std::abs(std::abs(s.alpha) - wk) < cfg.resonance_tol) {
                report.exact.push_back({l, m, nn, s.ch, s.alpha, s.bracket, prefactor, denom});
                continue;
            }
            if (std::abs(denom) < kNearDenominatorWarn) {
                report.near.push_back({l, m, nn, s.ch, s.alpha, s.bracket, prefactor, denom});
            }
            if (s.bracket != 0.0) {
                table.terms.push_back({l, m, nn, s.ch, s.alpha, s.bracket, prefactor});
            }
        }
    }
    return {std::move(table), std::move(report)};
}

std::pair<double, double> q1_eval(const ModeTermTable& table, double t) {
    const double wk = table.omega_k;
    const double cw = std::cos(wk * t), sw = std::sin(wk * t);
    double v = 0.0, d = 0.0;
    for (const SeriesTerm& term : table.terms) {
        const double a = term.alpha;
        const double denom = (a + wk) * (a - wk);
        const double coef = term.prefactor * term.bracket / denom;
        if (term.channel == Channel::Cos) {
            v += coef * (cw - std::cos(a * t));
            d += coef * (-wk * sw + a * std::sin(a * t));
        } else {
            v += coef * (a * sw - wk * std::sin(a * t)) / wk;
            d += coef * a * (cw - std::cos(a * t));
        }
    }
    return {v, d};
}

SeriesSolution::SeriesSolution(LatticeConfig cfg, ModeState ics, const CouplingTensor& tensor,
                               ShiftMethod method)
    : cfg_(cfg), ics_(std::move(ics)) {
    check_ics(ics_, cfg_);
    shift_ = (method == ShiftMethod::SelfConsistent)
                 ? rho_self_consistent(ics_, cfg_, tensor)
                 : rho_first_order(ics_, cfg_, tensor);
    tables_.reserve(static_cast<std::size_t>(cfg_.n));
    for (int k = 1; k <= cfg_.n; ++k) {
        auto [table, rep] = restricted_terms(k, ics_, cfg_, tensor);
        tables_.push_back(std::move(table));
        report_.exact.insert(report_.exact.end(), rep.exact.begin(), rep.exact.end());
        report_.near.insert(report_.near.end(), rep.near.begin(), rep.near.end());
    }
}

ModeState SeriesSolution::eval(double t) const {
    const int n = cfg_.n;
    ModeState out;
    out.Q.resize(static_cast<std::size_t>(n));
    out.Qdot.resize(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        const auto [v0, d0] = q0_eval(k, t, ics_, shift_, n);
        const auto [v1, d1] = q1_eval(tables_[static_cast<std::size_t>(k - 1)], t);
        out.Q[static_cast<std::size_t>(k - 1)] = v0 + cfg_.epsilon * v1;
        out.Qdot[static_cast<std::size_t>(k - 1)] = d0 + cfg_.epsilon * d1;
    }
    return out;
}

void dump_term_table(std::ostream& os, const std::vector<ModeTermTable>& tables) {
    os << "k l m n channel alpha bracket prefactor\n";
    char buf[160];
    for (const auto& table : tables) {
        for (const SeriesTerm& t : table.terms) {
            std::snprintf(buf, sizeof buf, "%d %d %d %d %s %.15g %.15g %.15g\n", table.k, t.l,
                          t.m, t.n, t.channel == Channel::Cos ? "cos" : "sin", t.alpha, t.bracket,
                          t.prefactor);
            os << buf;
        }
    }
}

}  // namespace fpu
