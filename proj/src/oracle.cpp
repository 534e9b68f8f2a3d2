#include "oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace cqnc::oracle {

namespace {

// State indices.
constexpr int kXa = 0, kPa = 1, kX = 2, kP = 3, kXd = 4, kPd = 5;

}  // namespace

LinearModel assemble_model(const PhysicalParams& p, AssemblyMode mode) {
    LinearModel m;
    m.mode = mode;
    m.drift.setZero();
    m.input.setZero();
    m.output.setZero();
    m.feedthrough.setZero();

    auto& A = m.drift;
    const double g = p.g;
    const double Gp = p.G_em;

    // Cavity quadratures.
    A(kXa, kXa) = -p.kappa / 2.0 + 2.0 * p.G_opa;
    A(kPa, kPa) = -(p.kappa / 2.0 + 2.0 * p.G_opa);
    A(kPa, kX) = -g;

    // Mechanics.
    A(kX, kP) = p.Omega;
    A(kP, kXa) = -g;
    A(kP, kX) = -p.Omega;
    A(kP, kP) = -p.gamma_m;

    if (mode == AssemblyMode::literal) {
        A(kP, kXd) = -Gp;
        A(kXd, kXd) = -p.Gamma / 2.0;
        A(kXd, kPd) = p.Delta_q + 2.0 * p.G_qubit * p.x_bar;
        A(kPd, kX) = -2.0 * Gp;
        A(kPd, kXd) = -p.Delta_q - 2.0 * p.G_qubit * p.x_bar + 2.0 * p.Omega_R * p.d_bar;
        A(kPd, kPd) = -p.Gamma / std::sqrt(2.0);
    } else {
        A(kPa, kXd) = -Gp;
        A(kXd, kXd) = -p.Gamma / 2.0;
        A(kXd, kPd) = p.Delta_q;
        A(kPd, kXa) = Gp;
        A(kPd, kXd) = -p.Delta_q;
        A(kPd, kPd) = -p.Gamma / 2.0;
    }

    auto& B = m.input;
    B(kXa, kXaIn) = std::sqrt(p.kappa);
    B(kPa, kPaIn) = std::sqrt(p.kappa);
    B(kP, kFth) = std::sqrt(p.gamma_m);
    B(kP, kFext) = std::sqrt(p.gamma_m);
    B(kXd, kXdIn) = std::sqrt(p.Gamma);
    B(kPd, kPdIn) = std::sqrt(p.Gamma);

    m.output(0, kPa) = std::sqrt(p.kappa);
    m.feedthrough(0, kPaIn) = -1.0;

    m.input_psd = {0.5, 0.5, p.n_bar, 0.0, 0.5, 0.5};

    const Eigen::VectorXcd eigs = A.eigenvalues();
    m.max_eig_real = eigs.real().maxCoeff();
    m.stable = m.max_eig_real < 0.0;
    return m;
}

TransferRow transfer_row(const LinearModel& model, double omega) {
    Eigen::Matrix<Complex, 6, 6> M =
        Complex(0.0, omega) * Eigen::Matrix<Complex, 6, 6>::Identity() -
        model.drift.cast<Complex>();

    Eigen::PartialPivLU<Eigen::Matrix<Complex, 6, 6>> lu(M);
    const Eigen::Matrix<Complex, 6, 6> X = lu.solve(model.input.cast<Complex>());

    TransferRow row;
    const Eigen::Matrix<Complex, 1, 6> gains =
        model.output.cast<Complex>() * X + model.feedthrough.cast<Complex>();
    for (int c = 0; c < 6; ++c) {
        row.gain[static_cast<std::size_t>(c)] = gains(0, c);
        if (!std::isfinite(gains(0, c).real()) || !std::isfinite(gains(0, c).imag()))
            row.pole = true;
    }
    return row;
}

std::optional<spectra::NoiseBudget> oracle_force_psd(const LinearModel& model, double omega,
                                                     bool include_thermal) {
    const TransferRow row = transfer_row(model, omega);
    if (row.pole) return std::nullopt;

    const Complex force_gain = row.gain[kFext];
    if (force_gain == Complex(0.0, 0.0))
        throw std::domain_error("force channel gain is zero; cannot normalize");

    auto level = [&](Channel ch) {
        const Complex r = row.gain[static_cast<std::size_t>(ch)] / force_gain;
        return (r.real() * r.real() + r.imag() * r.imag()) *
               model.input_psd[static_cast<std::size_t>(ch)];
    };

    spectra::NoiseBudget b;
    b.omega = omega;
    b.backaction = level(kXaIn);
    b.shot = level(kPaIn);
    b.thermal = include_thermal ? level(kFth) : 0.0;
    b.qubit_x = level(kXdIn);
    b.qubit_p = level(kPdIn);
    return spectra::finalize(b);
}

}  // namespace cqnc::oracle
