#include "analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cqnc::analysis {

namespace {

std::string gain_label(double gain_over_kappa) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "hybrid_G%g", gain_over_kappa);
    return buf;
}

}  // namespace

double constraint_residual(const PhysicalParams& p, double w) {
    const double om2 = p.Omega * p.Omega;
    const double d = om2 - w * w;
    const double denom = d * d + w * w * p.gamma_m * p.gamma_m;
    return std::fabs(p.g * p.g * om2 / denom - 1.0);
}

namespace {

RootEstimate classify_root(const PhysicalParams& p, Complex w, bool real_hint) {
    RootEstimate r;
    r.omega = w;
    r.is_real = real_hint;
    if (r.is_real) {
        r.omega = Complex(w.real(), 0.0);
        r.residual = constraint_residual(p, w.real());
    }
    return r;
}

// Roots of the quartic in omega via eigenvalues of the companion matrix of
// the quadratic in v = (omega/Omega)^2:
//   v^2 + ((gamma/Omega)^2 - 2) v + 1 - (g/Omega)^2 = 0.
// Working in normalized variables keeps the matrix entries O(1); the raw
// coefficients span ~28 decades and ruin the eigenvalue accuracy. Real roots
// get a few Newton steps on the normalized quartic in x = omega/Omega.
std::vector<RootEstimate> companion_roots(const PhysicalParams& p) {
    const double r = (p.gamma_m / p.Omega) * (p.gamma_m / p.Omega);
    const double s = (p.g / p.Omega) * (p.g / p.Omega);
    const double b = r - 2.0;
    const double c = 1.0 - s;

    Eigen::Matrix2d comp;
    comp << -b, -c, 1.0, 0.0;
    Eigen::EigenSolver<Eigen::Matrix2d> solver(comp);

    std::vector<RootEstimate> out;
    for (int i = 0; i < 2; ++i) {
        const Complex v = solver.eigenvalues()(i);
        // The 2x2 real Schur form yields exactly real eigenvalues when the
        // discriminant is non-negative, so v.imag() != 0 means a genuinely
        // complex pair.
        const bool real_root = v.imag() == 0.0 && v.real() >= 0.0;
        Complex x = std::sqrt(v);
        if (real_root) {
            // Newton on q(x) = x^4 + b x^2 + c.
            double xr = x.real();
            for (int it = 0; it < 6; ++it) {
                const double q = (xr * xr + b) * xr * xr + c;
                const double dq = 2.0 * xr * (2.0 * xr * xr + b);
                if (dq == 0.0) break;
                xr -= q / dq;
            }
            x = Complex(xr, 0.0);
        }
        out.push_back(classify_root(p, p.Omega * x, real_root));
        out.push_back(classify_root(p, -p.Omega * x, real_root));
    }
    std::sort(out.begin(), out.end(),
              [](const RootEstimate& a, const RootEstimate& b2) {
                  return a.omega.real() < b2.omega.real();
              });
    return out;
}

// The quoted closed-form radicals: omega^2 = Omega^2 - gamma^2/2
// -+ sqrt((4 Omega^2 g^2 - 4 Omega^a gamma^2 + gamma^4)/2) with a = 1 as
// printed and a = 2 with the dimensional fix.
std::vector<RootEstimate> quoted_roots(const PhysicalParams& p, bool corrected) {
    const double gamma2 = p.gamma_m * p.gamma_m;
    const double om2 = p.Omega * p.Omega;
    const double mid = corrected ? 4.0 * om2 * gamma2 : 4.0 * p.Omega * gamma2;
    const Complex radicand((4.0 * om2 * p.g * p.g - mid + gamma2 * gamma2) / 2.0, 0.0);
    const Complex root = std::sqrt(radicand);

    std::vector<RootEstimate> out;
    for (const double sign : {-1.0, 1.0}) {
        const Complex u = om2 - gamma2 / 2.0 + sign * root;
        const Complex w = std::sqrt(u);
        const bool real_root = u.imag() == 0.0 && u.real() >= 0.0;
        out.push_back(classify_root(p, w, real_root));
        out.push_back(classify_root(p, -w, real_root));
    }
    std::sort(out.begin(), out.end(),
              [](const RootEstimate& a, const RootEstimate& b) { return a.omega.real() < b.omega.real(); });
    return out;
}

bool root_sets_agree(const std::vector<RootEstimate>& a, const std::vector<RootEstimate>& b) {
    std::vector<double> ra, rb;
    for (const auto& r : a)
        if (r.is_real) ra.push_back(r.omega.real());
    for (const auto& r : b)
        if (r.is_real) rb.push_back(r.omega.real());
    if (ra.size() != rb.size()) return false;
    std::sort(ra.begin(), ra.end());
    std::sort(rb.begin(), rb.end());
    for (std::size_t i = 0; i < ra.size(); ++i) {
        const double scale = std::max({std::fabs(ra[i]), std::fabs(rb[i]), 1e-300});
        if (std::fabs(ra[i] - rb[i]) > 1e-8 * scale) return false;
    }
    return true;
}

}  // namespace

CqncReport cqnc_residual(const PhysicalParams& p, const FrequencyGrid& grid,
                         ChiDPrimeSign sign) {
    CqncReport r;
    r.delta_q_matched = p.Delta_q == p.Omega;
    r.gamma_matched = p.Gamma == p.gamma_m;
    r.coupling_matched = p.G_em == p.g;
    r.omega_over_gamma = p.Omega / p.Gamma;
    r.hierarchy_ok = r.omega_over_gamma >= 100.0;

    r.abs_residual.reserve(grid.points.size());
    r.rel_residual.reserve(grid.points.size());
    const double g2 = p.g * p.g;
    const double Gp2 = p.G_em * p.G_em;
    // At matched detuning the closed form is exact and shares the
    // denominator structure of chi_m, which keeps the cancellation free of
    // spurious rounding; away from it the product form carries the actual
    // Delta_q dependence.
    const auto route = r.delta_q_matched ? response::ChiDPrimeRoute::closed_form
                                         : response::ChiDPrimeRoute::product;
    for (const double w : grid.points) {
        const Complex cm = response::chi_m(p, w);
        const Complex cdp = response::chi_d_prime(p, w, sign, route);
        const double abs_res = std::abs(g2 * cm + Gp2 * cdp);
        const double rel = abs_res / (g2 * std::abs(cm));
        r.abs_residual.push_back(abs_res);
        r.rel_residual.push_back(rel);
        r.max_rel_residual = std::max(r.max_rel_residual, rel);
    }
    return r;
}

ConstraintRoots constraint_roots(const PhysicalParams& p) {
    ConstraintRoots roots;
    roots.companion = companion_roots(p);
    roots.paper_literal = quoted_roots(p, false);
    roots.paper_corrected = quoted_roots(p, true);
    roots.literal_matches_companion = root_sets_agree(roots.paper_literal, roots.companion);
    roots.corrected_matches_companion = root_sets_agree(roots.paper_corrected, roots.companion);
    return roots;
}

SqlMinimum minimize_sql(const PhysicalParams& p, double omega) {
    SqlMinimum m;
    m.g_sql_analytic = spectra::g_sql(p, omega);
    m.s_sql_analytic = spectra::s_sql(p, omega);

    const auto objective = [&](double lg) {
        PhysicalParams q = p;
        q.g = std::exp(lg);
        return spectra::s_standard_om(q, omega, false).total;
    };

    // Golden-section on log g.
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = std::log(1e-3 * m.g_sql_analytic);
    double b = std::log(1e3 * m.g_sql_analytic);
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    double fc = objective(c);
    double fd = objective(d);
    while (b - a > 1e-10) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = objective(d);
        }
    }
    const double lg = (a + b) / 2.0;
    m.g_min = std::exp(lg);
    m.s_min = objective(lg);
    return m;
}

SweepResult sweep_frequency(const std::vector<PhysicalParams>& variants,
                            const FrequencyGrid& grid, bool include_thermal) {
    SweepResult result;
    result.axis_name = "omega_over_Omega";
    if (variants.empty()) return result;

    const PhysicalParams& base = variants.front();
    result.axis.reserve(grid.points.size());
    result.standard.label = "standard";
    for (const auto& v : variants) {
        SweepSeries s;
        s.opa_gain = v.G_opa;
        s.label = gain_label(v.G_opa / v.kappa);
        result.hybrid.push_back(std::move(s));
        result.instability_warning |= response::opa_amplitude_unstable(v);
    }

    for (const double w : grid.points) {
        result.axis.push_back(w / base.Omega);
        result.standard.budget.push_back(spectra::s_standard_om(base, w, include_thermal));
        for (std::size_t i = 0; i < variants.size(); ++i)
            result.hybrid[i].budget.push_back(
                spectra::s_add_closed_form(variants[i], w, include_thermal));
        result.floor.push_back(spectra::s_cqnc_floor(base, w));
    }
    return result;
}

PowerSweepResult sweep_power(const PhysicalParams& p, double omega,
                             const std::vector<double>& powers_watt,
                             const std::vector<double>& opa_gains_over_kappa,
                             bool include_thermal) {
    PowerSweepResult out;
    SweepResult& result = out.sweep;
    result.axis_name = "P_L_watts";
    result.standard.label = "standard";
    for (const double gk : opa_gains_over_kappa) {
        SweepSeries s;
        s.opa_gain = gk * p.kappa;
        s.label = gain_label(gk);
        result.hybrid.push_back(std::move(s));
        PhysicalParams probe = with_opa_gain(p, gk * p.kappa);
        result.instability_warning |= response::opa_amplitude_unstable(probe);
    }

    for (const double power : powers_watt) {
        result.axis.push_back(power);
        const PhysicalParams at_power = with_power(p, power);
        result.standard.budget.push_back(spectra::s_standard_om(at_power, omega, include_thermal));
        const PhysicalParams matched = apply_cqnc_matching(at_power).params;
        for (std::size_t i = 0; i < opa_gains_over_kappa.size(); ++i) {
            const PhysicalParams v = with_opa_gain(matched, opa_gains_over_kappa[i] * p.kappa);
            result.hybrid[i].budget.push_back(spectra::s_add_closed_form(v, omega, include_thermal));
        }
        result.floor.push_back(spectra::s_cqnc_floor(matched, omega));
    }

    // Summary: discrete-derivative sign changes and argmin of the standard
    // series; first power at which each hybrid series is within 1% of the
    // floor.
    PowerSummary& sum = out.summary;
    const auto& std_series = result.standard.budget;
    int last_sign = 0;
    std::size_t argmin = 0;
    for (std::size_t i = 1; i < std_series.size(); ++i) {
        const double diff = std_series[i].total - std_series[i - 1].total;
        const int sign = (diff > 0.0) - (diff < 0.0);
        if (sign != 0 && last_sign != 0 && sign != last_sign) ++sum.sign_changes;
        if (sign != 0) last_sign = sign;
        if (std_series[i].total < std_series[argmin].total) argmin = i;
    }
    sum.standard_interior_min = sum.sign_changes == 1;
    if (!std_series.empty()) sum.standard_argmin_power = result.axis[argmin];

    for (std::size_t s = 0; s < result.hybrid.size(); ++s) {
        double reached = 0.0;
        for (std::size_t i = 0; i < result.hybrid[s].budget.size(); ++i) {
            if (result.hybrid[s].budget[i].total <= 1.01 * result.floor[i]) {
                reached = result.axis[i];
                break;
            }
        }
        sum.power_within_floor_1pct.push_back(reached);
    }
    return out;
}

}  // namespace cqnc::analysis
