#pragma once

// Problem definition for the fixed-end FPU-beta chain: configuration,
// linear spectrum, mode<->site transforms, quartic coupling tensor,
// energies and the exact mode-space equations of motion.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace fpu {

struct LatticeConfig {
    int n = 1;                    // number of moving particles N
    double epsilon = 0.0;         // quartic coupling strength
    double resonance_tol = 1e-9;  // |alpha| - omega_k band for resonance classification

    void validate() const {
        if (n < 1) throw std::invalid_argument("LatticeConfig: n must be >= 1");
        if (epsilon < 0.0) throw std::invalid_argument("LatticeConfig: epsilon must be >= 0");
        if (resonance_tol <= 0.0) throw std::invalid_argument("LatticeConfig: resonance_tol must be > 0");
    }
};

struct SiteState {
    std::vector<double> q;
    std::vector<double> p;
};

struct ModeState {
    std::vector<double> Q;
    std::vector<double> Qdot;
};

// Kronecker-type selection symbol: 1 at r = 0, -1 at r = +-2(n+1), 0 otherwise.
int delta(long r, int n);

// omega_k = 2 sin(pi k / (2(N+1))), k = 1..N. Throws on out-of-range k.
double omega(int k, int n);

// All N mode frequencies, strictly increasing, 0 < omega_k < 2.
std::vector<double> spectrum(int n);

// Integer coupling coefficient C_klmn, the sum of eight delta terms.
// Indices are 1-based mode numbers; throws on out-of-range.
int coupling(int k, int l, int m, int n, int lattice_n);

// Sparse support of the quartic coupling. For each mode k the nonzero
// (l,m,n) triples are stored with weight w = omega_l*omega_m*omega_n*C_klmn,
// in SoA layout so the cubic-sum kernel can gather them.
class CouplingTensor {
public:
    explicit CouplingTensor(int n);

    int lattice_n() const { return n_; }

    // Entries for mode k live in [offset(k), offset(k+1)). 0-based arrays,
    // indices stored 0-based for direct use as Q[] subscripts.
    std::size_t offset(int k) const { return offsets_[static_cast<std::size_t>(k - 1)]; }
    std::size_t offset_end(int k) const { return offsets_[static_cast<std::size_t>(k)]; }

    std::span<const std::int32_t> l_idx() const { return li_; }
    std::span<const std::int32_t> m_idx() const { return mi_; }
    std::span<const std::int32_t> n_idx() const { return ni_; }
    std::span<const double> weight() const { return w_; }

    // Sum over the mode-k support of w * Q_l Q_m Q_n (dispatches to the
    // active kernel backend).
    double cubic_sum(int k, std::span<const double> q) const;

private:
    int n_;
    std::vector<std::size_t> offsets_;
    std::vector<std::int32_t> li_, mi_, ni_;
    std::vector<double> w_;
};

// Discrete sine transform A_ij = sqrt(2/(N+1)) sin(pi i j/(N+1)).
// A is symmetric and involutive, so the same apply serves both directions.
SiteState mode_to_site(const ModeState& s);
ModeState site_to_mode(const SiteState& s);

// Hamiltonian evaluated in site coordinates (fixed ends q_0 = q_{N+1} = 0).
double energy_site(const SiteState& s, const LatticeConfig& cfg);

// Hamiltonian in normal-mode coordinates: harmonic sum plus the quartic
// quadruple sum with prefactor epsilon/(8(N+1)).
double energy_mode(const ModeState& s, const LatticeConfig& cfg, const CouplingTensor& tensor);

// Qddot_k = -omega_k^2 Q_k - (eps/(2(N+1))) sum_{lmn} w_k w_l w_m w_n C_klmn Q_l Q_m Q_n.
std::vector<double> eom_rhs(std::span<const double> q, const LatticeConfig& cfg,
                            const CouplingTensor& tensor);

}  // namespace fpu
