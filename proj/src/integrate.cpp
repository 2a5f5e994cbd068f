#include "fpu/integrate.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "fpu/kernels.hpp"

namespace fpu {

long IntegratorConfig::step_count() const {
    return std::lround(t_max / dt);
}

void IntegratorConfig::validate() const {
    if (dt <= 0.0) throw std::invalid_argument("IntegratorConfig: dt must be > 0");
    if (t_max <= 0.0) throw std::invalid_argument("IntegratorConfig: t_max must be > 0");
    if (dt > t_max) throw std::invalid_argument("IntegratorConfig: dt must be <= t_max");
    if (sample_every < 1) throw std::invalid_argument("IntegratorConfig: sample_every must be >= 1");
    const long steps = step_count();
    if (steps < 1 || std::abs(steps * dt - t_max) > 1e-9 * t_max)
        throw std::invalid_argument("IntegratorConfig: t_max must be an integer multiple of dt");
    if (steps % sample_every != 0)
        throw std::invalid_argument("IntegratorConfig: sample_every must divide the step count");
}

namespace {

bool all_finite(std::span<const double> v) {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

}  // namespace

Trajectory integrate(const ModeState& ics, const LatticeConfig& cfg, const CouplingTensor& tensor,
                     const IntegratorConfig& icfg) {
    cfg.validate();
    icfg.validate();
    const int n = cfg.n;
    if (static_cast<int>(ics.Q.size()) != n || ics.Q.size() != ics.Qdot.size())
        throw std::invalid_argument("integrate: initial conditions do not match lattice size");

    const long steps = icfg.step_count();
    const double dt = icfg.dt;
    const std::size_t nd = static_cast<std::size_t>(n);

    std::vector<double> q = ics.Q, v = ics.Qdot;
    Trajectory traj;
    traj.times.reserve(static_cast<std::size_t>(steps / icfg.sample_every) + 1);
    if (icfg.energy_monitor) traj.energy.emplace();

    auto sample = [&](double t) {
        traj.times.push_back(t);
        traj.q.push_back(q);
        traj.qdot.push_back(v);
        if (traj.energy) {
            traj.energy->push_back(energy_mode(ModeState{q, v}, cfg, tensor));
        }
    };
    sample(0.0);

    if (icfg.method == Method::RK4Fixed) {
        // State y = (q, v); k-stages stored as (dq, dv) pairs.
        std::vector<double> q1(nd), v1(nd), q2(nd), v2(nd), q3(nd), v3(nd);
        std::vector<double> kq1(nd), kq2(nd), kq3(nd), kq4(nd);
        std::vector<double> qa(nd), va(nd);
        for (long s = 1; s <= steps; ++s) {
            kq1 = v;
            auto kv1 = eom_rhs(q, cfg, tensor);
            q1 = q;
            v1 = v;
            kernels::axpy(0.5 * dt, kq1.data(), q1.data(), nd);
            kernels::axpy(0.5 * dt, kv1.data(), v1.data(), nd);
            kq2 = v1;
            auto kv2 = eom_rhs(q1, cfg, tensor);
            q2 = q;
            v2 = v;
            kernels::axpy(0.5 * dt, kq2.data(), q2.data(), nd);
            kernels::axpy(0.5 * dt, kv2.data(), v2.data(), nd);
            kq3 = v2;
            auto kv3 = eom_rhs(q2, cfg, tensor);
            q3 = q;
            v3 = v;
            kernels::axpy(dt, kq3.data(), q3.data(), nd);
            kernels::axpy(dt, kv3.data(), v3.data(), nd);
            kq4 = v3;
            auto kv4 = eom_rhs(q3, cfg, tensor);

            kernels::rk4_combine(dt, q.data(), kq1.data(), kq2.data(), kq3.data(), kq4.data(),
                                 qa.data(), nd);
            kernels::rk4_combine(dt, v.data(), kv1.data(), kv2.data(), kv3.data(), kv4.data(),
                                 va.data(), nd);
            q.swap(qa);
            v.swap(va);
            if (s % icfg.sample_every == 0) {
                const double t = static_cast<double>(s) * dt;
                if (!all_finite(q) || !all_finite(v)) throw BlowupError(t);
                sample(t);
            }
        }
    } else {
        // velocity Verlet: kick-drift-kick with acceleration from positions only
        auto acc = eom_rhs(q, cfg, tensor);
        for (long s = 1; s <= steps; ++s) {
            kernels::axpy(0.5 * dt, acc.data(), v.data(), nd);
            kernels::axpy(dt, v.data(), q.data(), nd);
            acc = eom_rhs(q, cfg, tensor);
            kernels::axpy(0.5 * dt, acc.data(), v.data(), nd);
            if (s % icfg.sample_every == 0) {
                const double t = static_cast<double>(s) * dt;
                if (!all_finite(q) || !all_finite(v)) throw BlowupError(t);
                sample(t);
            }
        }
    }
    return traj;
}

Trajectory integrate_driven(const std::function<double(double)>& forcing, double omega_k,
                            const IntegratorConfig& icfg) {
    icfg.validate();
    const long steps = icfg.step_count();
    const double dt = icfg.dt;
    const double w2 = omega_k * omega_k;

    double x = 0.0, v = 0.0;
    Trajectory traj;
    traj.times.push_back(0.0);
    traj.q.push_back({x});
    traj.qdot.push_back({v});

    auto rhs = [&](double t, double xx) { return forcing(t) - w2 * xx; };
    for (long s = 1; s <= steps; ++s) {
        const double t = static_cast<double>(s - 1) * dt;
        const double kx1 = v, kv1 = rhs(t, x);
        const double kx2 = v + 0.5 * dt * kv1, kv2 = rhs(t + 0.5 * dt, x + 0.5 * dt * kx1);
        const double kx3 = v + 0.5 * dt * kv2, kv3 = rhs(t + 0.5 * dt, x + 0.5 * dt * kx2);
        const double kx4 = v + dt * kv3, kv4 = rhs(t + dt, x + dt * kx3);
        x += dt / 6.0 * (kx1 + 2.0 * kx2 + 2.0 * kx3 + kx4);
        v += dt / 6.0 * (kv1 + 2.0 * kv2 + 2.0 * kv3 + kv4);
        if (s % icfg.sample_every == 0) {
            const double ts = static_cast<double>(s) * dt;
            if (!std::isfinite(x) || !std::isfinite(v)) throw BlowupError(ts);
            traj.times.push_back(ts);
            traj.q.push_back({x});
            traj.qdot.push_back({v});
        }
    }
    return traj;
}

void write_trajectory(std::ostream& os, const Trajectory& traj) {
    const std::size_t n = traj.q.empty() ? 0 : traj.q.front().size();
    os << "t";
    for (std::size_t k = 1; k <= n; ++k) os << " Q" << k;
    for (std::size_t k = 1; k <= n; ++k) os << " Qdot" << k;
    if (traj.energy) os << " H";
    os << "\n";
    char buf[32];
    auto put = [&](double x) {
        std::snprintf(buf, sizeof buf, "%.15g", x);
        os << buf;
    };
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        put(traj.times[i]);
        for (double x : traj.q[i]) {
            os << ' ';
            put(x);
        }
        for (double x : traj.qdot[i]) {
            os << ' ';
            put(x);
        }
        if (traj.energy) {
            os << ' ';
            put((*traj.energy)[i]);
        }
        os << "\n";
    }
}

}  // namespace fpu
