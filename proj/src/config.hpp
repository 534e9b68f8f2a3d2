#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "params.hpp"
#include "response.hpp"

namespace cqnc {

/// Raised for unreadable, malformed or contradictory configuration; the CLI
/// maps it to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Everything a run needs besides the physical parameters. Grid bounds are
/// in units of Omega, powers in watts.
struct RunConfig {
    double freq_min = 0.1;
    double freq_max = 2.0;
    std::size_t freq_count = 2000;
    bool freq_log = true;

    double power_min = 1e-12;
    double power_max = 1.0;
    std::size_t power_count = 200;

    std::vector<double> opa_gains_over_kappa = {0.0, 0.1, 0.3};

    oracle::AssemblyMode mode = oracle::AssemblyMode::consistent;
    response::ChiDPrimeSign chi_sign = response::ChiDPrimeSign::cancelling;
    bool thermal = false;

    void validate() const;
};

struct LoadedConfig {
    PhysicalParams params;
    RunConfig run;
};

/// Parses a flat key-value file:
///   - one `key = value` pair per line, `#` starts a comment
///   - `preset = fig2 | cqnc-matched` seeds the parameters; explicit keys
///     override preset values
///   - `unit = Hz | rad_s` (default rad_s) applies to the frequency-like
///     parameter keys, which are multiplied by 2*pi when given in Hz
///   - parameter keys: Omega gamma_m kappa Gamma Delta_q Delta_c g0 g G_opa
///     theta_opa G_em G_qubit d_bar x_bar Omega_R omega_L P_L T n_bar mass
///   - run keys: freq_min freq_max freq_count freq_scale(linear|log)
///     power_min power_max power_count opa_gains(comma list, units of kappa)
///     mode(literal|consistent) chi_sign(cancelling|positive)
///     thermal(on|off)
/// Throws ConfigError on any problem.
LoadedConfig load_config(const std::string& path);

LoadedConfig parse_config(const std::string& text, const std::string& origin);

}  // namespace cqnc
