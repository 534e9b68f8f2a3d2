#include "spectra.hpp"

#include <cmath>
#include <stdexcept>

#include "constants.hpp"

namespace cqnc::spectra {

namespace {

double abs2(Complex z) {
    return z.real() * z.real() + z.imag() * z.imag();
}

}  // namespace

NoiseCoefficients out_phase_coefficients(const PhysicalParams& p, double omega,
                                         ChiDPrimeSign sign) {
    const auto lp = response::lambda_plus(p, omega);
    const auto lm = response::lambda_minus(p, omega);
    const Complex cm = response::chi_m(p, omega);
    const Complex z = response::zeta(p, omega);
    const Complex cdp = response::chi_d_prime(p, omega, sign);

    NoiseCoefficients c;
    c.pole = lp.pole || lm.pole;
    const double g = p.g;
    const double Gp = p.G_em;
    c.xa_in = lp.value * lm.value * p.kappa * (g * g * cm + Gp * Gp * cdp);
    c.pa_in = lm.value * p.kappa - 1.0;
    c.force = -g * cm * lm.value * std::sqrt(p.gamma_m * p.kappa);
    c.xd_in = -Gp * z * lm.value * std::sqrt(p.Gamma * p.kappa);
    c.pd_in = Gp * cdp * lm.value * std::sqrt(p.Gamma * p.kappa);
    return c;
}

Complex force_estimator_normalization(const PhysicalParams& p, double omega) {
    if (p.g == 0.0) throw std::domain_error("force estimator undefined for g == 0");
    return -p.g * response::chi_m(p, omega) * response::lambda_minus(p, omega).value *
           std::sqrt(p.gamma_m * p.kappa);
}

AddedNoiseCoefficients added_noise_exact(const PhysicalParams& p, double omega,
                                         ChiDPrimeSign sign) {
    const NoiseCoefficients c = out_phase_coefficients(p, omega, sign);
    const Complex norm = force_estimator_normalization(p, omega);
    AddedNoiseCoefficients a;
    a.f_th = c.force / c.force;  // exactly 1
    a.xa_in = c.xa_in / norm;
    a.pa_in = c.pa_in / norm;
    a.xd_in = c.xd_in / norm;
    a.pd_in = c.pd_in / norm;
    return a;
}

AddedNoiseCoefficients added_noise_matched_form(const PhysicalParams& p, double omega) {
    if (p.g == 0.0) throw std::domain_error("force estimator undefined for g == 0");
    AddedNoiseCoefficients a;
    a.f_th = Complex(1.0, 0.0);
    a.xa_in = Complex(0.0, 0.0);
    a.pa_in = (response::lambda_minus(p, omega).value * p.kappa - 1.0) /
              force_estimator_normalization(p, omega);
    // Sign follows the exact solution; the commonly quoted form carries the
    // opposite sign on this channel, which no spectral density can see.
    a.xd_in = Complex(p.Gamma / 2.0, omega) / p.Omega;
    a.pd_in = Complex(std::sqrt(p.Gamma / p.gamma_m), 0.0);
    return a;
}

NoiseBudget finalize(NoiseBudget b) {
    b.total = b.thermal + b.shot + b.backaction + b.qubit_x + b.qubit_p;
    return b;
}

NoiseBudget budget_from_coefficients(const AddedNoiseCoefficients& c, double omega,
                                     double n_bar, bool include_thermal) {
    NoiseBudget b;
    b.omega = omega;
    b.thermal = include_thermal ? abs2(c.f_th) * n_bar : 0.0;
    b.shot = 0.5 * abs2(c.pa_in);
    b.backaction = 0.5 * abs2(c.xa_in);
    b.qubit_x = 0.5 * abs2(c.xd_in);
    b.qubit_p = 0.5 * abs2(c.pd_in);
    return finalize(b);
}

NoiseBudget s_add_closed_form(const PhysicalParams& p, double omega, bool include_thermal) {
    if (!is_cqnc_matched(p))
        throw std::domain_error("s_add_closed_form requires the matching conditions");
    if (p.g == 0.0) throw std::domain_error("shot term undefined for g == 0");

    const Complex lm = response::lambda_minus(p, omega).value;
    const Complex ratio = (lm * p.kappa - 1.0) / lm;
    NoiseBudget b;
    b.omega = omega;
    b.thermal = include_thermal ? p.n_bar : 0.0;
    b.shot = 0.5 * abs2(ratio) /
             (p.g * p.g * abs2(response::chi_m(p, omega)) * p.gamma_m * p.kappa);
    b.backaction = 0.0;
    b.qubit_x = 0.5 * (omega * omega + p.Gamma * p.Gamma / 4.0) / (p.Omega * p.Omega);
    b.qubit_p = 0.5;
    return finalize(b);
}

double s_cqnc_floor(const PhysicalParams& p, double omega) {
    // Same arithmetic path as the qubit components of s_add_closed_form.
    const double qubit_x = 0.5 * (omega * omega + p.Gamma * p.Gamma / 4.0) / (p.Omega * p.Omega);
    return qubit_x + 0.5;
}

NoiseBudget s_standard_om(const PhysicalParams& p, double omega, bool include_thermal) {
    if (p.g == 0.0) throw std::domain_error("shot term undefined for g == 0");
    NoiseBudget b;
    b.omega = omega;
    b.thermal = include_thermal ? p.n_bar : 0.0;
    b.shot = p.kappa / (8.0 * p.gamma_m * p.g * p.g * abs2(response::chi_m(p, omega)));
    b.backaction = 4.0 * p.g * p.g / (p.kappa * p.gamma_m);
    return finalize(b);
}

double s_sql(const PhysicalParams& p, double omega) {
    return 1.0 / (p.gamma_m * std::abs(response::chi_m(p, omega)));
}

double g_sql(const PhysicalParams& p, double omega) {
    return std::sqrt(p.kappa) / (2.0 * std::sqrt(std::abs(response::chi_m(p, omega))));
}

double psd_to_si(const PhysicalParams& p, double dimensionless) {
    if (p.mass <= 0.0) throw std::domain_error("mass is not configured");
    return dimensionless * kHbar * p.mass * p.Omega * p.gamma_m;
}

}  // namespace cqnc::spectra
