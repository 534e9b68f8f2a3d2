#pragma once

#include <complex>

#include "params.hpp"

namespace cqnc::response {

// Frequency-domain response functions of the linearized model. Fourier
// convention: d/dt -> +i*omega. All functions are pure in (params, omega)
// and trivially parallel over frequency grids; susceptibilities carry units
// of 1/(rad/s).

using Complex = std::complex<double>;

/// Cavity response 1/(i*omega + kappa/2).
Complex chi_a(const PhysicalParams& p, double omega);

/// Mechanical susceptibility Omega/(Omega^2 - omega^2 + i*gamma_m*omega).
Complex chi_m(const PhysicalParams& p, double omega);

/// Bare qubit response 1/(i*omega + Gamma/2).
Complex chi_d(const PhysicalParams& p, double omega);

/// Dressed qubit response 1/(i*omega + Gamma/2 + Delta_q^2 * chi_d).
Complex zeta(const PhysicalParams& p, double omega);

/// Sign convention for the effective electromechanical susceptibility. The
/// product definition -Delta_q*zeta*chi_d and the commonly quoted closed
/// form Omega/(Omega^2 - omega^2 + i*omega*Gamma + Gamma^2/4) differ by an
/// overall sign; only the first cancels the optical back-action term when
/// the couplings are matched (see the check command's adjudication).
enum class ChiDPrimeSign {
    cancelling,  // -Delta_q*zeta*chi_d; the convention used by default
    positive,    // +Delta_q*zeta*chi_d; reproduces the quoted closed form
};

/// Evaluation route for chi_d_prime. The closed form assumes Delta_q = Omega;
/// the product route is exact for any detuning. Both agree when
/// Delta_q = Omega.
enum class ChiDPrimeRoute {
    product,
    closed_form,
};

Complex chi_d_prime(const PhysicalParams& p, double omega,
                    ChiDPrimeSign sign = ChiDPrimeSign::cancelling,
                    ChiDPrimeRoute route = ChiDPrimeRoute::product);

/// OPA-dressed cavity response. lambda_plus develops a pole at omega = 0
/// when G_opa = kappa/4 exactly; rather than returning Inf the pole flag is
/// set so sweeps can skip and log the point.
struct OpaResponse {
    Complex value{0.0, 0.0};
    bool pole = false;
};

/// 1/(i*omega + kappa/2 - 2*G_opa)
OpaResponse lambda_plus(const PhysicalParams& p, double omega);

/// 1/(i*omega + kappa/2 + 2*G_opa)
OpaResponse lambda_minus(const PhysicalParams& p, double omega);

/// True when 2*G_opa >= kappa/2: the amplitude quadrature is anti-damped and
/// the steady state is unstable. A warning condition, not an error; the
/// frequency-domain responses are still well defined for omega != 0.
bool opa_amplitude_unstable(const PhysicalParams& p);

}  // namespace cqnc::response
