#pragma once

// First-order Lindstedt construction: amplitude-dependent frequency shifts,
// the stretched zeroth-order solution, and the closed-form particular
// solution assembled from a per-mode table of sinusoidal terms.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fpu/lattice.hpp"

namespace fpu {

enum class ShiftMethod { FirstOrder, SelfConsistent };

struct FrequencyShift {
    std::vector<double> rho;   // dimensions of 1/epsilon
    std::vector<double> beta;  // beta_k = 1 + epsilon * rho_k
    ShiftMethod method = ShiftMethod::FirstOrder;
};

struct ShiftConvergenceError : std::runtime_error {
    std::vector<double> last_rho;
    double residual;
    ShiftConvergenceError(std::string msg, std::vector<double> rho, double res)
        : std::runtime_error(std::move(msg)), last_rho(std::move(rho)), residual(res) {}
};

FrequencyShift rho_first_order(const ModeState& ics, const LatticeConfig& cfg,
                               const CouplingTensor& tensor);

// Fixed-point solve of the coupled system where each velocity term carries
// 1/(1 + eps*rho_m)^2 factors. Seeded with the first-order values.
FrequencyShift rho_self_consistent(const ModeState& ics, const LatticeConfig& cfg,
                                   const CouplingTensor& tensor, int max_iter = 200,
                                   double tol = 1e-12);

// Modified zeroth order: Q_k(0) cos(w_k b_k t) + Qdot_k(0)/(w_k b_k) sin(w_k b_k t).
// Returns (value, derivative). k is 1-based.
std::pair<double, double> q0_eval(int k, double t, const ModeState& ics,
                                  const FrequencyShift& shift, int lattice_n);

enum class Channel { Cos, Sin };

// One retained sub-term of the driven equation for Q_{k,1}. The source is
// prefactor * bracket * trig(alpha * t); the closed-form response carries the
// matched cos(w_k t)/sin(w_k t) counter-term so it vanishes at t = 0.
struct SeriesTerm {
    int l, m, n;  // 1-based mode indices
    Channel channel;
    double alpha;
    double bracket;
    double prefactor;  // -w_k/(8(N+1)) * w_l w_m w_n * C_klmn
};

struct ResonantTerm {
    int l, m, n;
    Channel channel;
    double alpha;
    double bracket;
    double prefactor;
    double denominator;  // alpha^2 - w_k^2, near zero by definition
};

struct ResonanceReport {
    std::vector<ResonantTerm> exact;  // excluded from the term table
    std::vector<ResonantTerm> near;   // retained but flagged (small denominator)
};

struct ModeTermTable {
    int k = 0;
    double omega_k = 0.0;
    std::vector<SeriesTerm> terms;
};

// Enumerates the eight harmonic source channels for every nonzero C_klmn
// entry of mode k, drops the ones resonant with omega_k (they are the terms
// absorbed into rho_k) and reports them.
std::pair<ModeTermTable, ResonanceReport> restricted_terms(int k, const ModeState& ics,
                                                           const LatticeConfig& cfg,
                                                           const CouplingTensor& tensor);

// Closed-form particular solution Q_{k,1}(t) and its derivative from the
// term table. Identically (0,0) at t = 0.
std::pair<double, double> q1_eval(const ModeTermTable& table, double t);

class SeriesSolution {
public:
    SeriesSolution(LatticeConfig cfg, ModeState ics, const CouplingTensor& tensor,
                   ShiftMethod method = ShiftMethod::FirstOrder);

    const LatticeConfig& config() const { return cfg_; }
    const ModeState& ics() const { return ics_; }
    const FrequencyShift& shift() const { return shift_; }
    const ModeTermTable& terms(int k) const { return tables_[static_cast<std::size_t>(k - 1)]; }
    const ResonanceReport& resonances() const { return report_; }

    // Q_k(t) = Q_{k,0}(beta_k t) + eps * Q_{k,1}(t); q1 runs on unstretched time.
    ModeState eval(double t) const;

private:
    LatticeConfig cfg_;
    ModeState ics_;
    FrequencyShift shift_;
    std::vector<ModeTermTable> tables_;
    ResonanceReport report_;
};

/// Debug/regression dump: one line per retained sub-term,
// k l m n channel alpha bracket prefactor (15 significant digits).
void dump_term_table(std::ostream& os, const std::vector<ModeTermTable>& tables);

}  // namespace fpu
