#include "fpu/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fpu/kernels.hpp"

namespace fpu {

namespace {

void check_mode_index(int k, int n) {
    if (k < 1 || k > n) throw std::out_of_range("mode index out of range [1, N]");
}

}  // namespace

int delta(long r, int n) {
    if (r == 0) return 1;
    const long fold = 2L * (n + 1);
    if (r == fold || r == -fold) return -1;
    return 0;
}

double omega(int k, int n) {
    check_mode_index(k, n);
    return 2.0 * std::sin(std::numbers::pi * k / (2.0 * (n + 1)));
}

std::vector<double> spectrum(int n) {
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) w[static_cast<std::size_t>(k - 1)] = omega(k, n);
    return w;
}

int coupling(int k, int l, int m, int n, int lattice_n) {
    check_mode_index(k, lattice_n);
    check_mode_index(l, lattice_n);
    check_mode_index(m, lattice_n);
    check_mode_index(n, lattice_n);
    const int nn = lattice_n;
    return delta(k + l + m + n, nn) + delta(k - l + m + n, nn) + delta(k + l - m + n, nn) +
           delta(k + l + m - n, nn) + delta(k - l - m + n, nn) + delta(k + l - m - n, nn) +
           delta(k - l + m - n, nn) + delta(k - l - m - n, nn);
}

CouplingTensor::CouplingTensor(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("CouplingTensor: n must be >= 1");
    const auto w = spectrum(n);
    offsets_.reserve(static_cast<std::size_t>(n) + 1);
    offsets_.push_back(0);
    // For fixed (k,l,m) the delta arguments pin n to a handful of candidates,
    // which keeps construction O(N^3).
    std::vector<int> cands;
    for (int k = 1; k <= n; ++k) {
        for (int l = 1; l <= n; ++l) {
            for (int m = 1; m <= n; ++m) {
                cands.clear();
                const int fold = 2 * (n + 1);
                for (int s : {k + l + m, k - l + m, k + l - m, k - l - m}) {
                    // each of the eight terms is delta(s +- nidx); solve for nidx
                    for (int target : {0, fold, -fold}) {
                        cands.push_back(target - s);   // s + nidx = target
                        cands.push_back(s - target);   // s - nidx = target
                    }
                }
                std::sort(cands.begin(), cands.end());
                cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
                for (int nidx : cands) {
                    if (nidx < 1 || nidx > n) continue;
                    const int c = coupling(k, l, m, nidx, n);
                    if (c == 0) continue;
                    li_.push_back(l - 1);
                    mi_.push_back(m - 1);
                    ni_.push_back(nidx - 1);
                    w_.push_back(w[static_cast<std::size_t>(l - 1)] *
                                 w[static_cast<std::size_t>(m - 1)] *
                                 w[static_cast<std::size_t>(nidx - 1)] * c);
                }
            }
        }
        offsets_.push_back(w_.size());
    }
}

double CouplingTensor::cubic_sum(int k, std::span<const double> q) const {
    check_mode_index(k, n_);
    const std::size_t lo = offset(k);
    const std::size_t count = offset_end(k) - lo;
    return kernels::cubic_sum(li_.data() + lo, mi_.data() + lo, ni_.data() + lo, w_.data() + lo,
                              count, q.data());
}

namespace {

// A_ij = sqrt(2/(N+1)) sin(pi i j/(N+1)); symmetric and involutive.
std::vector<double> apply_sine_transform(std::span<const double> x) {
    const int n = static_cast<int>(x.size());
    const double norm = std::sqrt(2.0 / (n + 1));
    std::vector<double> out(x.size());
    for (int i = 1; i <= n; ++i) {
        double acc = 0.0;
        for (int j = 1; j <= n; ++j) {
            acc += std::sin(std::numbers::pi * i * j / (n + 1)) * x[static_cast<std::size_t>(j - 1)];
        }
        out[static_cast<std::size_t>(i - 1)] = norm * acc;
    }
    return out;
}

void check_pair(std::size_t a, std::size_t b) {
    if (a != b) throw std::invalid_argument("state vectors must have equal length");
    if (a == 0) throw std::invalid_argument("state vectors must be non-empty");
}

}  // namespace

SiteState mode_to_site(const ModeState& s) {
    check_pair(s.Q.size(), s.Qdot.size());
    return SiteState{apply_sine_transform(s.Q), apply_sine_transform(s.Qdot)};
}

ModeState site_to_mode(const SiteState& s) {
    check_pair(s.q.size(), s.p.size());
    return ModeState{apply_sine_transform(s.q), apply_sine_transform(s.p)};
}

double energy_site(const SiteState& s, const LatticeConfig& cfg) {
    cfg.validate();
    check_pair(s.q.size(), s.p.size());
    const int n = cfg.n;
    if (static_cast<int>(s.q.size()) != n)
        throw std::invalid_argument("energy_site: state length does not match config");
    double kinetic = 0.0;
    for (double p : s.p) kinetic += p * p;
    double quad = 0.0, quart = 0.0;
    for (int i = 1; i <= n + 1; ++i) {
        const double qi = (i <= n) ? s.q[static_cast<std::size_t>(i - 1)] : 0.0;
        const double qim = (i >= 2) ? s.q[static_cast<std::size_t>(i - 2)] : 0.0;
        const double d = qi - qim;
        const double d2 = d * d;
        quad += d2;
        quart += d2 * d2;
    }
    return 0.5 * kinetic + 0.5 * quad + 0.25 * cfg.epsilon * quart;
}

double energy_mode(const ModeState& s, const LatticeConfig& cfg, const CouplingTensor& tensor) {
    cfg.validate();
    check_pair(s.Q.size(), s.Qdot.size());
    const int n = cfg.n;
    if (static_cast<int>(s.Q.size()) != n || tensor.lattice_n() != n)
        throw std::invalid_argument("energy_mode: size mismatch");
    double h = 0.0;
    for (int k = 1; k <= n; ++k) {
        const double wk = omega(k, n);
        const double qk = s.Q[static_cast<std::size_t>(k - 1)];
        const double pk = s.Qdot[static_cast<std::size_t>(k - 1)];
        h += 0.5 * (pk * pk + wk * wk * qk * qk);
        if (cfg.epsilon > 0.0) {
            h += cfg.epsilon / (8.0 * (n + 1)) * wk * qk * tensor.cubic_sum(k, s.Q);
        }
    }
    return h;
}

std::vector<double> eom_rhs(std::span<const double> q, const LatticeConfig& cfg,
                            const CouplingTensor& tensor) {
    const int n = cfg.n;
    if (static_cast<int>(q.size()) != n || tensor.lattice_n() != n)
        throw std::invalid_argument("eom_rhs: size mismatch");
    std::vector<double> acc(q.size());
    const double pre = cfg.epsilon / (2.0 * (n + 1));
    for (int k = 1; k <= n; ++k) {
        const double wk = omega(k, n);
        double a = -wk * wk * q[static_cast<std::size_t>(k - 1)];
        if (cfg.epsilon != 0.0) a -= pre * wk * tensor.cubic_sum(k, q);
        acc[static_cast<std::size_t>(k - 1)] = a;
    }
    return acc;
}

}  // namespace fpu
