#include "response.hpp"

namespace cqnc::response {

Complex chi_a(const PhysicalParams& p, double omega) {
    return 1.0 / Complex(p.kappa / 2.0, omega);
}

Complex chi_m(const PhysicalParams& p, double omega) {
    return p.Omega / Complex(p.Omega * p.Omega - omega * omega, p.gamma_m * omega);
}

Complex chi_d(const PhysicalParams& p, double omega) {
    return 1.0 / Complex(p.Gamma / 2.0, omega);
}

Complex zeta(const PhysicalParams& p, double omega) {
    return 1.0 / (Complex(p.Gamma / 2.0, omega) + p.Delta_q * p.Delta_q * chi_d(p, omega));
}

Complex chi_d_prime(const PhysicalParams& p, double omega, ChiDPrimeSign sign,
                    ChiDPrimeRoute route) {
    const double s = (sign == ChiDPrimeSign::cancelling) ? -1.0 : 1.0;
    if (route == ChiDPrimeRoute::product) {
        return s * p.Delta_q * zeta(p, omega) * chi_d(p, omega);
    }
    // Closed form; valid under Delta_q = Omega.
    const double om2 = p.Omega * p.Omega;
    return s * p.Omega /
           Complex(om2 - omega * omega + p.Gamma * p.Gamma / 4.0, omega * p.Gamma);
}

OpaResponse lambda_plus(const PhysicalParams& p, double omega) {
    const Complex den(p.kappa / 2.0 - 2.0 * p.G_opa, omega);
    if (den == Complex(0.0, 0.0)) return {Complex(0.0, 0.0), true};
    return {1.0 / den, false};
}

OpaResponse lambda_minus(const PhysicalParams& p, double omega) {
    // kappa/2 + 2*G_opa > 0 for validated params, so no pole is possible.
    return {1.0 / Complex(p.kappa / 2.0 + 2.0 * p.G_opa, omega), false};
}

bool opa_amplitude_unstable(const PhysicalParams& p) {
    return 2.0 * p.G_opa >= p.kappa / 2.0;
}

}  // namespace cqnc::response
