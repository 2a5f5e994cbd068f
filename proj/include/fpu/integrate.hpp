#pragma once

// High-accuracy numerical oracles: fixed-step RK4 and velocity-Verlet
// leapfrog for the full nonlinear mode-space system, plus a driven linear
// oscillator used to validate the closed-form first-order correction.

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fpu/lattice.hpp"

namespace fpu {

enum class Method { RK4Fixed, SymplecticLeapfrog };

struct IntegratorConfig {
    double dt = 1e-3;
    double t_max = 100.0;
    int sample_every = 100;
    Method method = Method::RK4Fixed;
    bool energy_monitor = false;

    // Steps are rounded to the nearest integer count; sample_every must
    // divide it so the last sample lands on t_max.
    long step_count() const;
    void validate() const;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> q;     // one row per sample, N columns
    std::vector<std::vector<double>> qdot;  // same shape
    std::optional<std::vector<double>> energy;
};

struct BlowupError : std::runtime_error {
    double t;
    explicit BlowupError(double when)
        : std::runtime_error("non-finite state at t = " + std::to_string(when)), t(when) {}
};

Trajectory integrate(const ModeState& ics, const LatticeConfig& cfg,
                     const CouplingTensor& tensor, const IntegratorConfig& icfg);

// x'' + w^2 x = f(t), x(0) = x'(0) = 0, fixed-step RK4. Oracle for q1_eval.
Trajectory integrate_driven(const std::function<double(double)>& forcing, double omega_k,
                            const IntegratorConfig& icfg);

// Columns t, Q_1..Q_N, Qdot_1..Qdot_N[, H], space-delimited, header row.
void write_trajectory(std::ostream& os, const Trajectory& traj);

}  // namespace fpu
