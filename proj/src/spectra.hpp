#pragma once

#include <complex>

#include "params.hpp"
#include "response.hpp"

namespace cqnc::spectra {

using Complex = std::complex<double>;
using response::ChiDPrimeSign;

/// Coefficients of each input channel in the output phase quadrature
/// P_a^out = sqrt(kappa)*P_a - p_a^in at one frequency. The xa_in term is the
/// measurement back-action; under exact matching and the cancelling sign
/// convention it vanishes up to the Gamma^2/4 offset between the mechanical
/// and qubit susceptibilities.
struct NoiseCoefficients {
    Complex xa_in;  // lambda+*lambda-*kappa*(g^2 chi_m + G_em^2 chi_d')
    Complex pa_in;  // lambda-*kappa - 1
    Complex xd_in;  // -G_em*zeta*lambda-*sqrt(Gamma*kappa)
    Complex pd_in;  // G_em*chi_d'*lambda-*sqrt(Gamma*kappa)
    Complex force;  // -g*chi_m*lambda-*sqrt(gamma_m*kappa), multiplies F_th + F_ext
    bool pole = false;
};

NoiseCoefficients out_phase_coefficients(const PhysicalParams& p, double omega,
                                         ChiDPrimeSign sign = ChiDPrimeSign::cancelling);

/// Denominator of the force estimator F = P_a^out / (-g chi_m lambda- sqrt(gamma_m kappa)).
/// Throws std::domain_error when g == 0.
Complex force_estimator_normalization(const PhysicalParams& p, double omega);

/// Added-noise coefficients: the force estimator minus the true external
/// force, per input channel. The thermal coefficient is exactly 1.
struct AddedNoiseCoefficients {
    Complex f_th{1.0, 0.0};
    Complex xa_in, pa_in, xd_in, pd_in;
};

/// Exact route: out_phase_coefficients divided by the estimator normalization.
AddedNoiseCoefficients added_noise_exact(const PhysicalParams& p, double omega,
                                         ChiDPrimeSign sign = ChiDPrimeSign::cancelling);

/// Matched-regime closed form (back-action dropped, qubit terms reduced to
/// -(i*omega + Gamma/2)/Omega and sqrt(Gamma/gamma_m)). Term-by-term this is
/// the square root of the closed-form noise spectral density below.
AddedNoiseCoefficients added_noise_matched_form(const PhysicalParams& p, double omega);

/// Per-frequency noise power decomposition, dimensionless (normalized by
/// hbar*m*Omega*gamma_m). total is always the exact sum of the components.
struct NoiseBudget {
    double omega = 0.0;
    double thermal = 0.0;
    double shot = 0.0;
    double backaction = 0.0;
    double qubit_x = 0.0;
    double qubit_p = 0.0;
    double total = 0.0;
};

NoiseBudget finalize(NoiseBudget b);

/// Sum |c_k|^2 * S_k over the added-noise coefficients with symmetrized
/// vacuum level 1/2 per quadrature and thermal level n_bar.
NoiseBudget budget_from_coefficients(const AddedNoiseCoefficients& c, double omega,
                                     double n_bar, bool include_thermal);

/// Closed-form added-noise spectral density of the hybrid scheme:
///   n_bar + shot/(g^2 |chi_m|^2 gamma_m kappa) * |(lambda- kappa - 1)/lambda-|^2 / 2
///         + (omega^2 + Omega^2 + Gamma^2/4) / (2 Omega^2).
/// Requires the matching conditions (the formula assumes back-action is
/// cancelled) and g > 0. Throws std::domain_error otherwise.
NoiseBudget s_add_closed_form(const PhysicalParams& p, double omega, bool include_thermal);

/// Noise floor of the cancellation scheme, (omega^2 + Omega^2 + Gamma^2/4)/(2 Omega^2).
double s_cqnc_floor(const PhysicalParams& p, double omega);

/// Standard optomechanical spectral density:
///   n_bar + kappa/(8 gamma_m g^2 |chi_m|^2) + 4 g^2/(kappa gamma_m).
/// Throws std::domain_error when g == 0 (shot term undefined).
NoiseBudget s_standard_om(const PhysicalParams& p, double omega, bool include_thermal);

/// Quoted standard-quantum-limit value 1/(gamma_m |chi_m|). The numerically
/// minimized standard spectral density is sqrt(2) times larger; see
/// analysis::minimize_sql, which reports both.
double s_sql(const PhysicalParams& p, double omega);

/// Quoted optimal coupling sqrt(kappa)/(2 sqrt(|chi_m|)).
double g_sql(const PhysicalParams& p, double omega);

/// Converts a dimensionless PSD value to N^2/Hz. Requires mass > 0.
double psd_to_si(const PhysicalParams& p, double dimensionless);

}  // namespace cqnc::spectra
