#pragma once

// Series-vs-numeric comparison: shared-grid sampling, error metrics,
// zero-crossing phase-drift estimate and the N=2 reproduction run.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fpu/integrate.hpp"
#include "fpu/lindstedt.hpp"

namespace fpu {

struct ComparisonReport {
    std::vector<double> max_abs_err;  // per mode
    std::vector<double> rms;          // per mode
    double phase_drift_rate = 0.0;    // rad per unit time, dominant mode
    double phase_fit_r2 = 0.0;
    std::optional<double> divergence_time;  // empty = threshold never exceeded
    double horizon = 0.0;
    double threshold = 0.0;
    std::vector<double> rho;
    std::vector<double> beta;
};

struct CompareResult {
    ComparisonReport report;
    std::vector<double> times;
    std::vector<std::vector<double>> q_series;  // rows x N
    std::vector<std::vector<double>> q_num;
};

CompareResult run_compare(const LatticeConfig& cfg, const ModeState& ics, double horizon,
                          double threshold, const IntegratorConfig& icfg,
                          ShiftMethod method = ShiftMethod::FirstOrder);

// CSV: t,Q1_series,...,QN_series,Q1_num,...,QN_num,diff1,...,diffN,
// 15 significant digits.
void write_compare_csv(std::ostream& os, const CompareResult& res);

void write_report_json(std::ostream& os, const ComparisonReport& rep);
void write_report_text(std::ostream& os, const ComparisonReport& rep);

struct ReproN2Result {
    FrequencyShift shift;
    std::vector<ModeTermTable> tables;
    CompareResult comparison;
};

// The worked example configuration: N=2, eps=1/10, Q(0)=(1/10,1),
// Qdot(0)=(1/10,0). Prints rho, beta*omega and the retained-harmonic tables,
// and produces comparison data over the given horizon.
ReproN2Result repro_n2(std::ostream& os, double horizon = 100.0, double threshold = 0.1,
                       double dt = 1e-3);

}  // namespace fpu
