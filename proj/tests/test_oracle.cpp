#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "grid.hpp"
#include "oracle.hpp"
#include "params.hpp"
#include "response.hpp"
#include "spectra.hpp"

using namespace cqnc;
using namespace cqnc::oracle;

namespace {

double rel(std::complex<double> a, std::complex<double> b) {
    return std::abs(a - b) / std::abs(b);
}

PhysicalParams matched_fig2() {
    return apply_cqnc_matching(make_fig2_params()).params;
}

PhysicalParams decoupled_fig2() {
    ParamsInput in = ParamsInput::from(make_fig2_params());
    in.P_L = 0.0;
    in.g.reset();
    in.G_em = 0.0;
    in.G_opa = 0.0;
    return make_params(in);
}

}  // namespace

TEST_CASE("literal assembly transcribes the equations of motion") {
    const PhysicalParams p = matched_fig2();
    const LinearModel m = assemble_model(p, AssemblyMode::literal);
    CHECK(m.drift(5, 5) == -p.Gamma / std::sqrt(2.0));
    CHECK(m.drift(3, 4) == -p.G_em);
    CHECK(m.drift(5, 2) == -2.0 * p.G_em);
    CHECK(m.drift(1, 4) == 0.0);
    CHECK(m.drift(5, 0) == 0.0);

    // Decoupled: block diagonal over (cavity | mechanics | qubit).
    const LinearModel d = assemble_model(decoupled_fig2(), AssemblyMode::literal);
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c)
            if (r / 2 != c / 2) CHECK(d.drift(r, c) == 0.0);
}

TEST_CASE("consistent assembly") {
    const PhysicalParams p = matched_fig2();
    const LinearModel m = assemble_model(p, AssemblyMode::consistent);
    CHECK(m.drift(1, 4) == -p.G_em);
    CHECK(m.drift(5, 0) == p.G_em);
    CHECK(m.drift(4, 4) == -p.Gamma / 2.0);
    CHECK(m.drift(5, 5) == -p.Gamma / 2.0);
    CHECK(m.drift(3, 4) == 0.0);
    CHECK(m.drift(5, 2) == 0.0);

    // The qubit block contributes the eigenvalue pair -Gamma/2 +- i*Delta_q.
    const Eigen::VectorXcd eigs = m.drift.eigenvalues();
    const std::complex<double> target(-p.Gamma / 2.0, p.Delta_q);
    double best = 1e300;
    for (int i = 0; i < eigs.size(); ++i) best = std::min(best, std::abs(eigs(i) - target));
    CHECK(best / std::abs(target) < 1e-9);
}

TEST_CASE("stability flag") {
    const PhysicalParams p = make_fig2_params();
    CHECK(assemble_model(p, AssemblyMode::consistent).stable);

    const LinearModel unstable =
        assemble_model(with_opa_gain(p, 0.3 * p.kappa), AssemblyMode::consistent);
    CHECK_FALSE(unstable.stable);
    CHECK(unstable.max_eig_real == doctest::Approx(0.1 * p.kappa).epsilon(1e-9));
}

TEST_CASE("transfer rows") {
    SUBCASE("no force path without couplings") {
        const LinearModel m = assemble_model(decoupled_fig2(), AssemblyMode::consistent);
        const TransferRow row = transfer_row(m, 0.5 * decoupled_fig2().Omega);
        CHECK(row.gain[kFext] == std::complex<double>(0.0, 0.0));
        CHECK(row.gain[kFth] == std::complex<double>(0.0, 0.0));
    }
    SUBCASE("bare optomechanics matches the closed form") {
        ParamsInput in = ParamsInput::from(make_fig2_params());
        in.G_em = 0.0;
        in.G_opa = 0.0;
        const PhysicalParams p = make_params(in);
        const LinearModel m = assemble_model(p, AssemblyMode::consistent);
        for (const double frac : {0.3, 1.0, 1.7}) {
            const double w = frac * p.Omega;
            const TransferRow row = transfer_row(m, w);
            const auto chi_a = response::chi_a(p, w);
            CHECK(rel(row.gain[kXaIn],
                      p.kappa * chi_a * chi_a * p.g * p.g * response::chi_m(p, w)) < 1e-11);
        }
    }
    SUBCASE("matched parameters: all five gains match the coefficients") {
        const PhysicalParams p = matched_fig2();
        const LinearModel m = assemble_model(p, AssemblyMode::consistent);
        const double w = 0.7 * p.Omega;
        const TransferRow row = transfer_row(m, w);
        const spectra::NoiseCoefficients c = spectra::out_phase_coefficients(p, w);
        CHECK(rel(row.gain[kPaIn], c.pa_in) < 1e-11);
        CHECK(rel(row.gain[kFth], c.force) < 1e-11);
        CHECK(rel(row.gain[kFext], c.force) < 1e-11);
        CHECK(rel(row.gain[kXdIn], c.xd_in) < 1e-11);
        CHECK(rel(row.gain[kPdIn], c.pd_in) < 1e-11);
        // Both routes hit catastrophic cancellation in the back-action term;
        // they agree to the contracted 1e-6, not to machine precision.
        CHECK(rel(row.gain[kXaIn], c.xa_in) < 1e-6);
    }
    SUBCASE("reality symmetry") {
        const PhysicalParams p = matched_fig2();
        const LinearModel m = assemble_model(p, AssemblyMode::consistent);
        std::mt19937 rng(99);
        std::uniform_real_distribution<double> mag(-2.0, 1.0);
        for (int i = 0; i < 50; ++i) {
            const double w = p.Omega * std::pow(10.0, mag(rng));
            const TransferRow pos = transfer_row(m, w);
            const TransferRow neg = transfer_row(m, -w);
            for (std::size_t ch = 0; ch < 6; ++ch)
                CHECK(std::abs(neg.gain[ch] - std::conj(pos.gain[ch])) <=
                      1e-12 * std::abs(pos.gain[ch]) + 1e-300);
        }
    }
    SUBCASE("pole detection on the imaginary axis") {
        // G_opa = kappa/4 puts a zero eigenvalue on the amplitude quadrature.
        const PhysicalParams p = with_opa_gain(make_fig2_params(), make_fig2_params().kappa / 4.0);
        const LinearModel m = assemble_model(p, AssemblyMode::literal);
        CHECK(transfer_row(m, 0.0).pole);
        CHECK_FALSE(transfer_row(m, 0.1 * p.Omega).pole);
    }
}

TEST_CASE("force-referred noise from the solver") {
    SUBCASE("zero force gain is an error") {
        const LinearModel m = assemble_model(decoupled_fig2(), AssemblyMode::consistent);
        CHECK_THROWS_AS(oracle_force_psd(m, 1.0, false), std::domain_error);
    }
    SUBCASE("pole returns empty") {
        const PhysicalParams p = with_opa_gain(make_fig2_params(), make_fig2_params().kappa / 4.0);
        const LinearModel m = assemble_model(p, AssemblyMode::literal);
        CHECK_FALSE(oracle_force_psd(m, 0.0, false).has_value());
    }
    SUBCASE("matched parameters off resonance") {
        const PhysicalParams p = matched_fig2();
        const LinearModel m = assemble_model(p, AssemblyMode::consistent);
        for (const double frac : {0.3, 0.5, 0.7}) {
            const auto psd = oracle_force_psd(m, frac * p.Omega, false);
            REQUIRE(psd.has_value());
            CHECK(psd->backaction >= 0.0);
            CHECK(psd->shot >= 0.0);
            CHECK(psd->qubit_x >= 0.0);
            CHECK(psd->qubit_p >= 0.0);
            CHECK(psd->total ==
                  psd->thermal + psd->shot + psd->backaction + psd->qubit_x + psd->qubit_p);
            // Cancellation: the x_a^in share is tiny away from resonance.
            CHECK(psd->backaction / psd->total < 1e-8);
            // And the total tracks the closed form.
            const double closed = spectra::s_add_closed_form(p, frac * p.Omega, false).total;
            CHECK(std::fabs(psd->total - closed) / closed < 1e-6);
        }
    }
    SUBCASE("total is bounded below by the qubit components") {
        const PhysicalParams p = matched_fig2();
        const LinearModel m = assemble_model(p, AssemblyMode::consistent);
        const auto psd = oracle_force_psd(m, 1.2 * p.Omega, false);
        REQUIRE(psd.has_value());
        CHECK(psd->total >= psd->qubit_x + psd->qubit_p);
    }
    SUBCASE("thermal channel carries n_bar") {
        ParamsInput in = ParamsInput::from(matched_fig2());
        in.T = 1.0;
        in.n_bar.reset();
        const PhysicalParams p = apply_cqnc_matching(make_params(in)).params;
        const LinearModel m = assemble_model(p, AssemblyMode::consistent);
        const auto on = oracle_force_psd(m, 0.6 * p.Omega, true);
        const auto off = oracle_force_psd(m, 0.6 * p.Omega, false);
        REQUIRE(on.has_value());
        // F_th and F_ext share the same port, so the ratio is exactly 1.
        CHECK(on->thermal == doctest::Approx(p.n_bar).epsilon(1e-12));
        CHECK(off->thermal == 0.0);
    }
    SUBCASE("bare optomechanics: minimum over g at resonance hits the quoted limit") {
        // The product shot*backaction of the solver PSD is 1/(4 gamma^2 |chi_m|^2),
        // so the minimum over g is exactly 1/(gamma_m |chi_m|).
        ParamsInput in = ParamsInput::from(make_fig2_params());
        in.G_em = 0.0;
        const PhysicalParams base = make_params(in);
        const double w = base.Omega;
        double best = 1e300;
        for (double scale = 0.25; scale <= 4.0; scale *= 1.001) {
            ParamsInput q = ParamsInput::from(base);
            q.g = scale * spectra::g_sql(base, w);
            q.P_L.reset();
            const LinearModel m = assemble_model(make_params(q), AssemblyMode::consistent);
            best = std::min(best, oracle_force_psd(m, w, false)->total);
        }
        CHECK(std::fabs(best - spectra::s_sql(base, w)) < 1e-5);
    }
}
