#include <cmath>
#include <stdexcept>

#include "constants.hpp"
#include "doctest.h"
#include "params.hpp"

using namespace cqnc;

namespace {

// Expected values below marked "extended-precision" come from a 50-digit
// evaluation of the defining formulas.
constexpr double kG_Fig2 = 333351615.60768072;       // extended-precision
constexpr double kE_L_Fig2 = 1571434586104.5493;     // extended-precision
constexpr double kNbar300K = 20836619.136094569;     // extended-precision

double rel(double a, double b) {
    return std::fabs(a - b) / std::fabs(b);
}

}  // namespace

TEST_CASE("reference parameter set") {
    const PhysicalParams p = make_fig2_params();
    CHECK(rel(p.kappa / p.Omega, 10.0 / 3.0) < 1e-15);
    CHECK(p.T == 0.0);
    CHECK(p.n_bar == 0.0);
    CHECK(p.P_L == 0.1);
    CHECK(p.G_opa == 0.0);
    CHECK(p.G_em == 0.0);
    CHECK(rel(p.g, kG_Fig2) < 1e-12);
    CHECK(rel(p.E_L, kE_L_Fig2) < 1e-12);
}

TEST_CASE("coupling from power") {
    const PhysicalParams p = make_fig2_params();
    CHECK(g_from_power(p, 0.0) == 0.0);
    // P = 2*hbar*omega_L*kappa makes the ratio under the root exactly 1.
    CHECK(rel(g_from_power(p, 2.0 * kHbar * p.omega_L * p.kappa), p.g0) < 1e-15);
    CHECK(rel(g_from_power(p, 0.1), kG_Fig2) < 1e-12);
    CHECK_THROWS_AS(g_from_power(p, -1e-9), std::domain_error);
    CHECK_THROWS_AS(power_from_g(p, -1.0), std::domain_error);
}

TEST_CASE("power round trip") {
    const PhysicalParams p = make_fig2_params();
    for (double power = 1e-15; power <= 1.0; power *= 10.0) {
        CHECK(rel(power_from_g(p, g_from_power(p, power)), power) < 1e-12);
    }
}

TEST_CASE("matching conditions") {
    const PhysicalParams p = make_fig2_params();
    const MatchingResult m = apply_cqnc_matching(p);

    CHECK(m.params.Delta_q == m.params.Omega);
    CHECK(m.params.Gamma == m.params.gamma_m);
    CHECK(m.params.G_em == m.params.g);
    CHECK(m.params.Delta_q == kTwoPi * 3e5);
    CHECK(m.params.Gamma == kTwoPi * 30.0);
    CHECK(is_cqnc_matched(m.params));
    CHECK(m.hierarchy_ok);
    CHECK(m.omega_over_gamma == doctest::Approx(1e4));

    // Idempotent: re-applying changes nothing.
    const MatchingResult twice = apply_cqnc_matching(m.params);
    CHECK(twice.params.Delta_q == m.params.Delta_q);
    CHECK(twice.params.Gamma == m.params.Gamma);
    CHECK(twice.params.G_em == m.params.G_em);
    CHECK(twice.params.g == m.params.g);
    CHECK(twice.params.G_qubit == m.params.G_qubit);
}

TEST_CASE("matching warns on a weak rate hierarchy") {
    ParamsInput in = ParamsInput::from(make_fig2_params());
    in.gamma_m = *in.Omega / 50.0;  // Omega only 50x the (matched) dephasing
    in.Gamma = *in.gamma_m;
    const MatchingResult m = apply_cqnc_matching(make_params(in));
    CHECK_FALSE(m.hierarchy_ok);
    CHECK(m.omega_over_gamma == doctest::Approx(50.0));
}

TEST_CASE("validation rejects broken invariants") {
    ParamsInput base = ParamsInput::from(make_fig2_params());

    SUBCASE("non-positive rates") {
        ParamsInput in = base;
        in.kappa = -1.0;
        CHECK_THROWS_AS(make_params(in), std::invalid_argument);
        in = base;
        in.Gamma = 0.0;
        CHECK_THROWS_AS(make_params(in), std::invalid_argument);
    }
    SUBCASE("inconsistent g and P_L") {
        ParamsInput in = base;
        in.g = 2.0 * kG_Fig2;  // P_L still says 0.1 W
        CHECK_THROWS_AS(make_params(in), std::invalid_argument);
    }
    SUBCASE("inconsistent T and n_bar") {
        ParamsInput in = base;
        in.T = 300.0;
        in.n_bar = 1.0;
        CHECK_THROWS_AS(make_params(in), std::invalid_argument);
    }
    SUBCASE("fixed fields") {
        ParamsInput in = base;
        in.theta_opa = 0.1;
        CHECK_THROWS_AS(make_params(in), std::invalid_argument);
        in = base;
        in.Delta_c = 1.0;
        CHECK_THROWS_AS(make_params(in), std::invalid_argument);
    }
    SUBCASE("inconsistent G_em and G_qubit") {
        ParamsInput in = base;
        in.G_qubit = 100.0;
        in.G_em = 5.0;  // != sqrt(2)*100*1
        CHECK_THROWS_AS(make_params(in), std::invalid_argument);
    }
    SUBCASE("missing drive") {
        ParamsInput in = base;
        in.g.reset();
        in.P_L.reset();
        CHECK_THROWS_AS(make_params(in), std::invalid_argument);
    }
}

TEST_CASE("derived quantities") {
    ParamsInput in = ParamsInput::from(make_fig2_params());
    in.T = 300.0;
    in.n_bar.reset();
    in.G_qubit = 100.0;
    in.G_em.reset();
    const PhysicalParams p = make_params(in);
    CHECK(rel(p.n_bar, kNbar300K) < 1e-12);
    CHECK(rel(p.G_em, std::sqrt(2.0) * 100.0) < 1e-15);

    // g alone determines P_L through the inverse relation.
    ParamsInput in2 = ParamsInput::from(make_fig2_params());
    in2.P_L.reset();
    in2.g = kG_Fig2;
    CHECK(rel(make_params(in2).P_L, 0.1) < 1e-12);
}

TEST_CASE("copy helpers") {
    const PhysicalParams p = make_fig2_params();
    const PhysicalParams q = with_opa_gain(p, 0.3 * p.kappa);
    CHECK(q.G_opa == 0.3 * p.kappa);
    CHECK(q.g == p.g);

    const PhysicalParams r = with_power(p, 1e-6);
    CHECK(r.P_L == 1e-6);
    CHECK(rel(r.g, g_from_power(p, 1e-6)) < 1e-15);
}

TEST_CASE("field lookup by key") {
    const PhysicalParams p = make_fig2_params();
    CHECK(param_by_key(p, "Omega") == p.Omega);
    CHECK(param_by_key(p, "E_L") == p.E_L);
    CHECK_FALSE(param_by_key(p, "nonsense").has_value());
}
