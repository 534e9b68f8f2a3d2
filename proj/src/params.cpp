#include "params.hpp"

#include <cmath>
#include <stdexcept>

#include "constants.hpp"

namespace cqnc {

namespace {

// Relative tolerance when the caller supplies both members of a derived pair
// (g vs P_L, n_bar vs T, G_em vs G_qubit). Tight enough to catch real
// mistakes, loose enough to accept round-tripped config snapshots.
constexpr double kConsistencyTol = 1e-9;

void require(bool ok, const char* message) {
    if (!ok) throw std::invalid_argument(message);
}

bool consistent(double a, double b) {
    const double scale = std::max(std::fabs(a), std::fabs(b));
    return scale == 0.0 || std::fabs(a - b) <= kConsistencyTol * scale;
}

double coupling_from_power(double g0, double omega_L, double kappa, double power) {
    return g0 * std::sqrt(power / (2.0 * kHbar * omega_L * kappa));
}

}  // namespace

ParamsInput ParamsInput::from(const PhysicalParams& p) {
    ParamsInput in;
    in.Omega = p.Omega;
    in.gamma_m = p.gamma_m;
    in.kappa = p.kappa;
    in.Gamma = p.Gamma;
    in.Delta_q = p.Delta_q;
    in.Delta_c = p.Delta_c;
    in.g0 = p.g0;
    in.g = p.g;
    in.G_opa = p.G_opa;
    in.theta_opa = p.theta_opa;
    in.G_em = p.G_em;
    in.G_qubit = p.G_qubit;
    in.d_bar = p.d_bar;
    in.x_bar = p.x_bar;
    in.Omega_R = p.Omega_R;
    in.omega_L = p.omega_L;
    in.P_L = p.P_L;
    in.T = p.T;
    in.n_bar = p.n_bar;
    in.mass = p.mass;
    return in;
}

PhysicalParams make_params(const ParamsInput& in) {
    PhysicalParams p;

    require(in.Omega.has_value(), "Omega is required");
    require(in.gamma_m.has_value(), "gamma_m is required");
    require(in.kappa.has_value(), "kappa is required");
    require(in.Gamma.has_value(), "Gamma is required");
    require(in.g0.has_value(), "g0 is required");
    require(in.omega_L.has_value(), "omega_L is required");

    p.Omega = *in.Omega;
    p.gamma_m = *in.gamma_m;
    p.kappa = *in.kappa;
    p.Gamma = *in.Gamma;
    p.g0 = *in.g0;
    p.omega_L = *in.omega_L;
    require(p.Omega > 0.0, "Omega must be > 0");
    require(p.gamma_m > 0.0, "gamma_m must be > 0");
    require(p.kappa > 0.0, "kappa must be > 0");
    require(p.Gamma > 0.0, "Gamma must be > 0");
    require(p.g0 > 0.0, "g0 must be > 0");
    require(p.omega_L > 0.0, "omega_L must be > 0");

    p.Delta_q = in.Delta_q.value_or(0.0);
    p.Delta_c = in.Delta_c.value_or(0.0);
    require(p.Delta_c == 0.0, "Delta_c is fixed to 0 in this model");
    p.G_opa = in.G_opa.value_or(0.0);
    require(p.G_opa >= 0.0, "G_opa must be >= 0");
    p.theta_opa = in.theta_opa.value_or(0.0);
    require(p.theta_opa == 0.0, "theta_opa is fixed to 0 in this model");

    p.d_bar = in.d_bar.value_or(1.0);
    p.x_bar = in.x_bar.value_or(0.0);
    p.Omega_R = in.Omega_R.value_or(0.0);

    // Drive: g and P_L are tied by P = 2*hbar*omega_L*kappa*(g/g0)^2. When
    // both are provided and consistent the given values are kept verbatim,
    // so copying a parameter set never perturbs them.
    require(in.g.has_value() || in.P_L.has_value(), "one of g, P_L is required");
    if (in.g.has_value() && in.P_L.has_value()) {
        require(*in.g >= 0.0, "g must be >= 0");
        require(*in.P_L >= 0.0, "P_L must be >= 0");
        require(consistent(*in.g, coupling_from_power(p.g0, p.omega_L, p.kappa, *in.P_L)),
                "g and P_L are inconsistent");
        p.g = *in.g;
        p.P_L = *in.P_L;
    } else if (in.P_L.has_value()) {
        require(*in.P_L >= 0.0, "P_L must be >= 0");
        p.P_L = *in.P_L;
        p.g = coupling_from_power(p.g0, p.omega_L, p.kappa, p.P_L);
    } else {
        require(*in.g >= 0.0, "g must be >= 0");
        p.g = *in.g;
        const double r = p.g / p.g0;
        p.P_L = 2.0 * kHbar * p.omega_L * p.kappa * r * r;
    }
    p.E_L = std::sqrt(p.P_L * p.kappa / (kHbar * p.omega_L));

    // Thermal occupation: n_bar = kB*T/(hbar*Omega).
    p.T = in.T.value_or(0.0);
    require(p.T >= 0.0, "T must be >= 0");
    if (in.n_bar.has_value()) {
        require(*in.n_bar >= 0.0, "n_bar must be >= 0");
        if (in.T.has_value())
            require(consistent(*in.n_bar, kBoltzmann * p.T / (kHbar * p.Omega)),
                    "n_bar and T are inconsistent");
        p.n_bar = *in.n_bar;
    } else if (in.T.has_value()) {
        p.n_bar = kBoltzmann * p.T / (kHbar * p.Omega);
    } else {
        p.n_bar = 0.0;
    }

    // Electromechanical coupling: G_em = sqrt(2)*G_qubit*d_bar when the bare
    // coupling is given; otherwise G_em is a first-class input. Provided
    // values are kept verbatim once the pair passes the consistency check.
    if (in.G_em.has_value()) {
        p.G_em = *in.G_em;
        if (in.G_qubit.has_value()) {
            require(consistent(*in.G_em, std::sqrt(2.0) * *in.G_qubit * p.d_bar),
                    "G_em and G_qubit*d_bar are inconsistent");
            p.G_qubit = *in.G_qubit;
        } else {
            p.G_qubit = (p.d_bar != 0.0) ? p.G_em / (std::sqrt(2.0) * p.d_bar) : 0.0;
            require(p.d_bar != 0.0 || p.G_em == 0.0, "nonzero G_em requires d_bar != 0");
        }
    } else if (in.G_qubit.has_value()) {
        p.G_qubit = *in.G_qubit;
        p.G_em = std::sqrt(2.0) * p.G_qubit * p.d_bar;
    }

    p.mass = in.mass.value_or(0.0);
    require(p.mass >= 0.0, "mass must be >= 0");

    auto finite = [](double v) { return std::isfinite(v); };
    require(finite(p.Omega) && finite(p.gamma_m) && finite(p.kappa) && finite(p.Gamma) &&
                finite(p.Delta_q) && finite(p.g0) && finite(p.g) && finite(p.G_opa) &&
                finite(p.G_em) && finite(p.G_qubit) && finite(p.d_bar) && finite(p.x_bar) &&
                finite(p.Omega_R) && finite(p.omega_L) && finite(p.P_L) && finite(p.E_L) &&
                finite(p.T) && finite(p.n_bar) && finite(p.mass),
            "all parameters must be finite");

    return p;
}

PhysicalParams make_fig2_params() {
    ParamsInput in;
    in.Omega = kTwoPi * 3e5;
    in.gamma_m = kTwoPi * 30.0;
    in.kappa = kTwoPi * 1e6;
    in.Gamma = kTwoPi * 30.0;
    in.g0 = kTwoPi * 300.0;
    in.omega_L = kTwoPi * 3.84e14;
    in.P_L = 0.1;
    in.G_opa = 0.0;
    in.G_em = 0.0;
    return make_params(in);
}

double g_from_power(const PhysicalParams& p, double power_watt) {
    if (power_watt < 0.0) throw std::domain_error("power must be >= 0");
    return coupling_from_power(p.g0, p.omega_L, p.kappa, power_watt);
}

double power_from_g(const PhysicalParams& p, double coupling) {
    if (coupling < 0.0) throw std::domain_error("coupling must be >= 0");
    const double r = coupling / p.g0;
    return 2.0 * kHbar * p.omega_L * p.kappa * r * r;
}

MatchingResult apply_cqnc_matching(const PhysicalParams& p) {
    ParamsInput in = ParamsInput::from(p);
    in.Delta_q = p.Omega;
    in.Gamma = p.gamma_m;
    in.G_em = p.g;
    // Keep G_em = sqrt(2)*G_qubit*d_bar in force for the new coupling.
    in.G_qubit.reset();

    MatchingResult result;
    result.params = make_params(in);
    result.omega_over_gamma = result.params.Omega / result.params.Gamma;
    result.hierarchy_ok = result.omega_over_gamma >= 100.0;
    return result;
}

bool is_cqnc_matched(const PhysicalParams& p) {
    return p.Delta_q == p.Omega && p.Gamma == p.gamma_m && p.G_em == p.g;
}

PhysicalParams with_opa_gain(const PhysicalParams& p, double gain) {
    ParamsInput in = ParamsInput::from(p);
    in.G_opa = gain;
    return make_params(in);
}

PhysicalParams with_power(const PhysicalParams& p, double power_watt) {
    ParamsInput in = ParamsInput::from(p);
    in.P_L = power_watt;
    in.g.reset();
    return make_params(in);
}

std::optional<double> param_by_key(const PhysicalParams& p, const std::string& key) {
    if (key == "Omega") return p.Omega;
    if (key == "gamma_m") return p.gamma_m;
    if (key == "kappa") return p.kappa;
    if (key == "Gamma") return p.Gamma;
    if (key == "Delta_q") return p.Delta_q;
    if (key == "Delta_c") return p.Delta_c;
    if (key == "g0") return p.g0;
    if (key == "g") return p.g;
    if (key == "G_opa") return p.G_opa;
    if (key == "theta_opa") return p.theta_opa;
    if (key == "G_em") return p.G_em;
    if (key == "G_qubit") return p.G_qubit;
    if (key == "d_bar") return p.d_bar;
    if (key == "x_bar") return p.x_bar;
    if (key == "Omega_R") return p.Omega_R;
    if (key == "omega_L") return p.omega_L;
    if (key == "P_L") return p.P_L;
    if (key == "E_L") return p.E_L;
    if (key == "T") return p.T;
    if (key == "n_bar") return p.n_bar;
    if (key == "mass") return p.mass;
    return std::nullopt;
}

}  // namespace cqnc
