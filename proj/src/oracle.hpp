#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <optional>

#include "params.hpp"
#include "spectra.hpp"

namespace cqnc::oracle {

// Independent reference route: assemble the six-quadrature linear system
// over the state (x_a, p_a, x, p, x_d, p_d), solve it per frequency as a
// complex linear system and apply input-output, without touching any
// closed-form susceptibility. Models are immutable after assembly and the
// per-frequency solves are independent.

using Complex = std::complex<double>;

/// Input channel ordering of the model's B matrix and transfer rows.
enum Channel : int {
    kXaIn = 0,
    kPaIn = 1,
    kFth = 2,   // thermal force, PSD level n_bar
    kFext = 3,  // external (signal) force, same physical port as F_th
    kXdIn = 4,
    kPdIn = 5,
};

/// How the drift matrix is transcribed from the quadrature equations of
/// motion.
///
/// literal:    term-by-term as displayed, including the Gamma/sqrt(2)
///             damping on p_d, the factor-2 asymmetry of the qubit-position
///             coupling (-2*G_em on x in the p_d equation vs -G_em on x_d in
///             the p equation) and the x_bar/Omega_R terms.
/// consistent: Gamma/2 damping on both qubit quadratures, x_bar/Omega_R
///             terms dropped, and the single coupling constant G_em placed
///             on the cavity amplitude path (-G_em x_d in the p_a equation,
///             +G_em x_a in the p_d equation). This is the arrangement whose
///             exact frequency-domain solution reproduces zeta and chi_d'
///             and realizes the back-action cancellation the output-phase
///             coefficients describe; the literal mechanical placement
///             admits no cancellation (see README).
enum class AssemblyMode { literal, consistent };

struct LinearModel {
    Eigen::Matrix<double, 6, 6> drift;        // A
    Eigen::Matrix<double, 6, 6> input;        // B, one column per channel
    Eigen::Matrix<double, 1, 6> output;       // C, selects sqrt(kappa)*p_a
    Eigen::Matrix<double, 1, 6> feedthrough;  // D, -1 on p_a^in
    std::array<double, 6> input_psd{};        // symmetrized level per channel
    AssemblyMode mode = AssemblyMode::consistent;
    bool stable = true;          // all drift eigenvalues have Re < 0
    double max_eig_real = 0.0;   // largest real part, for diagnostics
};

LinearModel assemble_model(const PhysicalParams& p, AssemblyMode mode);

/// Complex gains from every input channel to P_a^out at one frequency:
/// C (i*omega*I - A)^-1 B + D, one partial-pivot LU solve per call.
/// pole is set when i*omega coincides with a drift eigenvalue.
struct TransferRow {
    std::array<Complex, 6> gain{};
    bool pole = false;
};

TransferRow transfer_row(const LinearModel& model, double omega);

/// Force-referred noise budget: the transfer row is divided by the external
/// force gain and each noise channel contributes |gain|^2 * S_in. Returns
/// nullopt at a pole. Throws std::domain_error when the force gain is zero.
std::optional<spectra::NoiseBudget> oracle_force_psd(const LinearModel& model, double omega,
                                                     bool include_thermal);

}  // namespace cqnc::oracle
