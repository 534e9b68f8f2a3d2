#pragma once

#include <complex>
#include <string>
#include <vector>

#include "grid.hpp"
#include "params.hpp"
#include "spectra.hpp"

namespace cqnc::analysis {

using Complex = std::complex<double>;
using response::ChiDPrimeSign;

/// Cancellation-condition report: exact-equality matching flags and the
/// per-frequency residual |g^2 chi_m + G_em^2 chi_d'|, absolute and relative
/// to g^2 |chi_m|.
struct CqncReport {
    bool delta_q_matched = false;
    bool gamma_matched = false;
    bool coupling_matched = false;
    double omega_over_gamma = 0.0;
    bool hierarchy_ok = false;  // Omega/Gamma >= 100
    std::vector<double> abs_residual;
    std::vector<double> rel_residual;
    double max_rel_residual = 0.0;
};

CqncReport cqnc_residual(const PhysicalParams& p, const FrequencyGrid& grid,
                         ChiDPrimeSign sign = ChiDPrimeSign::cancelling);

/// |g^2 Omega^2 / ((Omega^2-omega^2)^2 + omega^2 gamma_m^2) - 1|, the
/// deviation from the coupling constraint at one frequency.
double constraint_residual(const PhysicalParams& p, double omega);

/// One root of the coupling constraint g^2 Omega^2 = (Omega^2-omega^2)^2 +
/// omega^2 gamma_m^2. Complex-tagged roots carry no residual.
struct RootEstimate {
    Complex omega;
    bool is_real = false;
    double residual = 0.0;  // |g^2 Omega^2 / ((Omega^2-w^2)^2 + w^2 gamma^2) - 1|
};

struct ConstraintRoots {
    std::vector<RootEstimate> companion;        // quartic roots via companion eigenvalues
    std::vector<RootEstimate> paper_literal;    // quoted radicals, 4*Omega*gamma^2 term as printed
    std::vector<RootEstimate> paper_corrected;  // with the dimensional fix 4*Omega^2*gamma^2
    bool literal_matches_companion = false;     // real-root sets agree to 1e-8 relative
    bool corrected_matches_companion = false;
};

ConstraintRoots constraint_roots(const PhysicalParams& p);

/// Result of minimizing the standard optomechanical spectral density over
/// the coupling at fixed frequency, next to the quoted analytic claims.
struct SqlMinimum {
    double g_min = 0.0;
    double s_min = 0.0;
    double g_sql_analytic = 0.0;  // sqrt(kappa)/(2 sqrt|chi_m|)
    double s_sql_analytic = 0.0;  // 1/(gamma_m |chi_m|)
};

/// Golden-section search over g in [1e-3, 1e3]*g_sql_analytic (log scale) to
/// relative tolerance 1e-10. The objective a/g^2 + b*g^2 is smooth and
/// unimodal in log g.
SqlMinimum minimize_sql(const PhysicalParams& p, double omega);

/// One labeled curve of a sweep.
struct SweepSeries {
    std::string label;
    double opa_gain = 0.0;  // rad/s
    std::vector<spectra::NoiseBudget> budget;
};

/// Tabulated sweep rows; axis length equals every series' row count.
struct SweepResult {
    std::string axis_name;
    std::vector<double> axis;
    SweepSeries standard;              // standard optomechanical curve
    std::vector<SweepSeries> hybrid;   // one per parameter variant
    std::vector<double> floor;         // cancellation-scheme noise floor
    bool instability_warning = false;  // some variant has 2*G_opa >= kappa/2
};

/// Frequency sweep: per omega, the standard curve and floor (from the first
/// variant) and one hybrid closed-form curve per variant. An empty variant
/// list produces an empty result.
SweepResult sweep_frequency(const std::vector<PhysicalParams>& variants,
                            const FrequencyGrid& grid, bool include_thermal);

/// Extra bookkeeping for power sweeps.
struct PowerSummary {
    int sign_changes = 0;               // of the standard series' discrete derivative
    bool standard_interior_min = false; // exactly one sign change
    double standard_argmin_power = 0.0;
    std::vector<double> power_within_floor_1pct;  // per gain; 0 if never reached
};

struct PowerSweepResult {
    SweepResult sweep;
    PowerSummary summary;
};

/// Power sweep at fixed omega: per power point, g from the power relation,
/// then the standard curve and the matched hybrid curve per OPA gain.
PowerSweepResult sweep_power(const PhysicalParams& p, double omega,
                             const std::vector<double>& powers_watt,
                             const std::vector<double>& opa_gains_over_kappa,
                             bool include_thermal);

}  // namespace cqnc::analysis
