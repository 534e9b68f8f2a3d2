#pragma once

#include <optional>
#include <string>

namespace cqnc {

/// Validated physical parameters of the hybrid electro-optomechanical model.
///
/// Every frequency-like quantity is angular (rad/s). Instances are immutable
/// after construction and safe to share read-only across threads; use the
/// with_* helpers or ParamsInput to obtain modified copies.
struct PhysicalParams {
    double Omega = 0.0;      // mechanical angular frequency
    double gamma_m = 0.0;    // mechanical damping rate
    double kappa = 0.0;      // cavity decay rate
    double Gamma = 0.0;      // qubit dephasing rate
    double Delta_q = 0.0;    // qubit detuning
    double Delta_c = 0.0;    // cavity detuning; the linearized model assumes
                             // resonant drive, so this is always 0
    double g0 = 0.0;         // single-photon optomechanical coupling
    double g = 0.0;          // linearized optomechanical coupling
    double G_opa = 0.0;      // parametric amplifier gain
    double theta_opa = 0.0;  // OPA pump phase, fixed 0
    double G_em = 0.0;       // effective electromechanical coupling
    double G_qubit = 0.0;    // bare qubit-phonon coupling
    double d_bar = 1.0;      // qubit steady-state mean value
    double x_bar = 0.0;      // mechanical steady-state mean value
    double Omega_R = 0.0;    // qubit drive amplitude
    double omega_L = 0.0;    // laser angular frequency
    double P_L = 0.0;        // laser power, W
    double E_L = 0.0;        // laser drive amplitude, derived
    double T = 0.0;          // bath temperature, K
    double n_bar = 0.0;      // thermal occupation
    double mass = 0.0;       // oscillator mass, kg; 0 means not configured
};

/// Raw parameter set before validation. Leave a field unset to get the
/// documented default (or an error for the required rates). Exactly one of
/// {g, P_L} is needed; the other is derived from the power relation.
struct ParamsInput {
    std::optional<double> Omega, gamma_m, kappa, Gamma, Delta_q, Delta_c;
    std::optional<double> g0, g, G_opa, theta_opa, G_em, G_qubit;
    std::optional<double> d_bar, x_bar, Omega_R;
    std::optional<double> omega_L, P_L, T, n_bar, mass;

    static ParamsInput from(const PhysicalParams& p);
};

/// Validates the input, derives dependent quantities (g or P_L, E_L, n_bar,
/// G_em or G_qubit) and returns the immutable parameter set. Throws
/// std::invalid_argument on any violated invariant; internally inconsistent
/// pairs (g vs P_L, T vs n_bar, G_em vs G_qubit) are rejected, never
/// silently overwritten.
PhysicalParams make_params(const ParamsInput& input);

/// Parameter set used throughout the reference figures: Omega = 2pi*300 kHz,
/// gamma_m = 2pi*30 Hz, kappa = 2pi*1 MHz, g0 = 2pi*300 Hz,
/// omega_L = 2pi*384 THz, P_L = 100 mW, qubit decoupled (G_em = 0).
PhysicalParams make_fig2_params();

/// Coupling from drive power: g = g0*sqrt(P/(2*hbar*omega_L*kappa)).
/// Throws std::domain_error for negative power.
double g_from_power(const PhysicalParams& p, double power_watt);

/// Inverse of g_from_power: P = 2*hbar*omega_L*kappa*(g/g0)^2.
double power_from_g(const PhysicalParams& p, double coupling);

struct MatchingResult {
    PhysicalParams params;
    double omega_over_gamma = 0.0;  // Omega/Gamma after matching
    bool hierarchy_ok = false;      // Omega/Gamma >= 100
};

/// Applies the noise-cancellation matching conditions exactly:
/// Delta_q = Omega, Gamma = gamma_m, G_em = g. hierarchy_ok is false (a
/// warning condition, not an error) when Omega/Gamma < 100.
MatchingResult apply_cqnc_matching(const PhysicalParams& p);

/// True when the matching conditions hold to exact equality.
bool is_cqnc_matched(const PhysicalParams& p);

/// Copy with a different OPA gain; everything else unchanged.
PhysicalParams with_opa_gain(const PhysicalParams& p, double gain);

/// Copy driven at a different power; g is re-derived, G_em is untouched.
PhysicalParams with_power(const PhysicalParams& p, double power_watt);

/// Field access by the documented config-file key ("Omega", "gamma_m", ...).
/// Returns nullopt for unknown keys.
std::optional<double> param_by_key(const PhysicalParams& p, const std::string& key);

}  // namespace cqnc
