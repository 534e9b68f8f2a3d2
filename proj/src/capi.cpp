#include "cqnc.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <string>

#include "analysis.hpp"
#include "check.hpp"
#include "config.hpp"
#include "oracle.hpp"
#include "params.hpp"
#include "response.hpp"
#include "spectra.hpp"
#include "table.hpp"

struct cqnc_params {
    cqnc::PhysicalParams p;
};

struct cqnc_table {
    cqnc::Table t;
    std::string rendered;
};

struct cqnc_report {
    cqnc::check::CheckReport r;
    std::string text;
    std::string json;
};

namespace {

thread_local std::string g_last_error;

cqnc_status fail(cqnc_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

template <typename Fn>
cqnc_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return CQNC_OK;
    } catch (const cqnc::ConfigError& e) {
        return fail(CQNC_ERROR_PARSE, e.what());
    } catch (const std::domain_error& e) {
        return fail(CQNC_ERROR_DOMAIN, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(CQNC_ERROR_INVALID_ARGUMENT, e.what());
    } catch (const std::runtime_error& e) {
        return fail(CQNC_ERROR_IO, e.what());
    } catch (const std::exception& e) {
        return fail(CQNC_ERROR_INTERNAL, e.what());
    }
}

cqnc::RunConfig to_run_config(const cqnc_run_setup& s) {
    cqnc::RunConfig run;
    run.freq_min = s.freq_min;
    run.freq_max = s.freq_max;
    run.freq_count = s.freq_count;
    run.freq_log = s.freq_log != 0;
    run.power_min = s.power_min_watt;
    run.power_max = s.power_max_watt;
    run.power_count = s.power_count;
    if (s.n_opa_gains > CQNC_MAX_OPA_GAINS) throw std::invalid_argument("too many OPA gains");
    run.opa_gains_over_kappa.assign(s.opa_gains_over_kappa,
                                    s.opa_gains_over_kappa + s.n_opa_gains);
    if (s.mode == 0) run.mode = cqnc::oracle::AssemblyMode::consistent;
    else if (s.mode == 1) run.mode = cqnc::oracle::AssemblyMode::literal;
    else throw std::invalid_argument("mode must be 0 (consistent) or 1 (literal)");
    if (s.chi_sign == 0) run.chi_sign = cqnc::response::ChiDPrimeSign::cancelling;
    else if (s.chi_sign == 1) run.chi_sign = cqnc::response::ChiDPrimeSign::positive;
    else throw std::invalid_argument("chi_sign must be 0 (cancelling) or 1 (positive)");
    run.thermal = s.thermal != 0;
    run.validate();
    return run;
}

void from_run_config(const cqnc::RunConfig& run, cqnc_run_setup* s) {
    s->freq_min = run.freq_min;
    s->freq_max = run.freq_max;
    s->freq_count = run.freq_count;
    s->freq_log = run.freq_log ? 1 : 0;
    s->power_min_watt = run.power_min;
    s->power_max_watt = run.power_max;
    s->power_count = run.power_count;
    s->n_opa_gains = run.opa_gains_over_kappa.size();
    for (std::size_t i = 0; i < s->n_opa_gains; ++i)
        s->opa_gains_over_kappa[i] = run.opa_gains_over_kappa[i];
    s->mode = run.mode == cqnc::oracle::AssemblyMode::consistent ? 0 : 1;
    s->chi_sign = run.chi_sign == cqnc::response::ChiDPrimeSign::cancelling ? 0 : 1;
    s->thermal = run.thermal ? 1 : 0;
}

void add_param_snapshot(cqnc::Table& t, const cqnc::PhysicalParams& p) {
    static const char* keys[] = {"Omega",   "gamma_m", "kappa",   "Gamma",   "Delta_q",
                                 "Delta_c", "g0",      "g",       "G_opa",   "theta_opa",
                                 "G_em",    "G_qubit", "d_bar",   "x_bar",   "Omega_R",
                                 "omega_L", "P_L",     "E_L",     "T",       "n_bar",
                                 "mass"};
    for (const char* key : keys) t.add_meta(key, *cqnc::param_by_key(p, key));
}

void add_run_snapshot(cqnc::Table& t, const cqnc::RunConfig& run, bool freq, bool power) {
    t.add_meta("mode", run.mode == cqnc::oracle::AssemblyMode::consistent ? "consistent"
                                                                          : "literal");
    t.add_meta("chi_sign",
               run.chi_sign == cqnc::response::ChiDPrimeSign::cancelling ? "cancelling"
                                                                         : "positive");
    t.add_meta("thermal", run.thermal ? "on" : "off");
    if (freq) {
        t.add_meta("freq_min", run.freq_min);
        t.add_meta("freq_max", run.freq_max);
        t.add_meta("freq_count", static_cast<double>(run.freq_count));
        t.add_meta("freq_scale", run.freq_log ? "log" : "linear");
    }
    if (power) {
        t.add_meta("power_min", run.power_min);
        t.add_meta("power_max", run.power_max);
        t.add_meta("power_count", static_cast<double>(run.power_count));
    }
    std::string gains;
    for (std::size_t i = 0; i < run.opa_gains_over_kappa.size(); ++i) {
        if (i) gains += ',';
        gains += cqnc::format_double(run.opa_gains_over_kappa[i]);
    }
    t.add_meta("opa_gains", gains);
}

cqnc::Table build_psd_table(const cqnc::PhysicalParams& params, const cqnc::RunConfig& run) {
    const cqnc::MatchingResult matching = cqnc::apply_cqnc_matching(params);
    std::vector<cqnc::PhysicalParams> variants;
    for (const double gk : run.opa_gains_over_kappa)
        variants.push_back(cqnc::with_opa_gain(matching.params, gk * params.kappa));

    const cqnc::FrequencyGrid grid =
        run.freq_log
            ? cqnc::FrequencyGrid::log_spaced(run.freq_min * params.Omega,
                                              run.freq_max * params.Omega, run.freq_count)
            : cqnc::FrequencyGrid::linear(run.freq_min * params.Omega,
                                          run.freq_max * params.Omega, run.freq_count);

    const cqnc::analysis::SweepResult sweep =
        cqnc::analysis::sweep_frequency(variants, grid, run.thermal);

    cqnc::Table t;
    t.add_meta("tool", "cqnc");
    t.add_meta("version", cqnc_version());
    t.add_meta("command", "psd");
    add_run_snapshot(t, run, true, false);
    add_param_snapshot(t, matching.params);
    if (!matching.hierarchy_ok)
        t.warnings.push_back("Omega/Gamma < 100; the matched-response approximation degrades");
    if (sweep.instability_warning)
        t.warnings.push_back("2*G_opa >= kappa/2 for some gain: amplitude quadrature is "
                             "anti-damped (unstable steady state)");

    t.columns = {"omega_over_Omega", "s_standard"};
    for (const auto& series : sweep.hybrid) t.columns.push_back("s_" + series.label);
    t.columns.push_back("s_cqnc_floor");
    t.columns.insert(t.columns.end(),
                     {"standard_thermal", "standard_shot", "standard_backaction"});
    for (const auto& series : sweep.hybrid) {
        t.columns.push_back(series.label + "_thermal");
        t.columns.push_back(series.label + "_shot");
        t.columns.push_back(series.label + "_qubit_x");
        t.columns.push_back(series.label + "_qubit_p");
    }

    for (std::size_t i = 0; i < sweep.axis.size(); ++i) {
        std::vector<cqnc::Table::Cell> row;
        row.emplace_back(sweep.axis[i]);
        row.emplace_back(sweep.standard.budget[i].total);
        for (const auto& series : sweep.hybrid) row.emplace_back(series.budget[i].total);
        row.emplace_back(sweep.floor[i]);
        row.emplace_back(sweep.standard.budget[i].thermal);
        row.emplace_back(sweep.standard.budget[i].shot);
        row.emplace_back(sweep.standard.budget[i].backaction);
        for (const auto& series : sweep.hybrid) {
            row.emplace_back(series.budget[i].thermal);
            row.emplace_back(series.budget[i].shot);
            row.emplace_back(series.budget[i].qubit_x);
            row.emplace_back(series.budget[i].qubit_p);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

cqnc::Table build_power_table(const cqnc::PhysicalParams& params, const cqnc::RunConfig& run) {
    std::vector<double> powers;
    powers.reserve(run.power_count);
    const double ratio = run.power_max / run.power_min;
    for (std::size_t i = 0; i < run.power_count; ++i) {
        const double tpos = static_cast<double>(i) / static_cast<double>(run.power_count - 1);
        powers.push_back(run.power_min * std::pow(ratio, tpos));
    }

    const cqnc::analysis::PowerSweepResult result = cqnc::analysis::sweep_power(
        params, params.Omega, powers, run.opa_gains_over_kappa, run.thermal);
    const cqnc::analysis::SweepResult& sweep = result.sweep;

    cqnc::Table t;
    t.add_meta("tool", "cqnc");
    t.add_meta("version", cqnc_version());
    t.add_meta("command", "power-sweep");
    add_run_snapshot(t, run, false, true);
    add_param_snapshot(t, params);
    t.add_meta("standard_interior_minimum", result.summary.standard_interior_min ? "yes" : "no");
    t.add_meta("standard_derivative_sign_changes",
               static_cast<double>(result.summary.sign_changes));
    t.add_meta("standard_argmin_power_watt", result.summary.standard_argmin_power);
    for (std::size_t i = 0; i < sweep.hybrid.size(); ++i)
        t.add_meta(sweep.hybrid[i].label + "_power_within_1pct_of_floor_watt",
                   result.summary.power_within_floor_1pct[i]);
    if (sweep.instability_warning)
        t.warnings.push_back("2*G_opa >= kappa/2 for some gain: amplitude quadrature is "
                             "anti-damped (unstable steady state)");

    t.columns = {"P_L_watts", "g", "s_standard"};
    for (const auto& series : sweep.hybrid) t.columns.push_back("s_" + series.label);

    for (std::size_t i = 0; i < sweep.axis.size(); ++i) {
        std::vector<cqnc::Table::Cell> row;
        row.emplace_back(sweep.axis[i]);
        row.emplace_back(cqnc::g_from_power(params, sweep.axis[i]));
        row.emplace_back(sweep.standard.budget[i].total);
        for (const auto& series : sweep.hybrid) row.emplace_back(series.budget[i].total);
        t.rows.push_back(std::move(row));
    }
    return t;
}

cqnc::Table build_roots_table(const cqnc::PhysicalParams& params) {
    const cqnc::analysis::ConstraintRoots roots = cqnc::analysis::constraint_roots(params);

    cqnc::Table t;
    t.add_meta("tool", "cqnc");
    t.add_meta("version", cqnc_version());
    t.add_meta("command", "roots");
    add_param_snapshot(t, params);
    t.add_meta("literal_radical_matches_companion", roots.literal_matches_companion ? "yes" : "no");
    t.add_meta("corrected_radical_matches_companion",
               roots.corrected_matches_companion ? "yes" : "no");

    t.columns = {"source", "index", "omega_re_rad_s", "omega_im_rad_s", "is_real", "residual"};
    const auto emit = [&t](const char* source, const std::vector<cqnc::analysis::RootEstimate>& set) {
        std::size_t index = 0;
        for (const auto& r : set) {
            std::vector<cqnc::Table::Cell> row;
            row.emplace_back(std::string(source));
            row.emplace_back(static_cast<double>(index++));
            row.emplace_back(r.omega.real());
            row.emplace_back(r.omega.imag());
            row.emplace_back(r.is_real ? 1.0 : 0.0);
            if (r.is_real)
                row.emplace_back(r.residual);
            else
                row.emplace_back(std::string("excluded"));
            t.rows.push_back(std::move(row));
        }
    };
    emit("companion", roots.companion);
    emit("quoted_literal", roots.paper_literal);
    emit("quoted_corrected", roots.paper_corrected);
    return t;
}

}  // namespace

extern "C" {

const char* cqnc_version(void) {
    return "1.0.0";
}

const char* cqnc_last_error(void) {
    return g_last_error.c_str();
}

cqnc_status cqnc_params_fig2(cqnc_params** out) {
    if (!out) return fail(CQNC_ERROR_INVALID_ARGUMENT, "out is null");
    return guarded([&] { *out = new cqnc_params{cqnc::make_fig2_params()}; });
}

cqnc_status cqnc_params_load(const char* path, cqnc_params** out) {
    if (!path || !out) return fail(CQNC_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = new cqnc_params{cqnc::load_config(path).params}; });
}

cqnc_status cqnc_params_apply_matching(const cqnc_params* in, cqnc_params** out,
                                       int* hierarchy_warning) {
    if (!in || !out) return fail(CQNC_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const cqnc::MatchingResult result = cqnc::apply_cqnc_matching(in->p);
        if (hierarchy_warning) *hierarchy_warning = result.hierarchy_ok ? 0 : 1;
        *out = new cqnc_params{result.params};
    });
}

cqnc_status cqnc_params_with_opa_gain(const cqnc_params* in, double gain_rad_s,
                                      cqnc_params** out) {
    if (!in || !out) return fail(CQNC_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = new cqnc_params{cqnc::with_opa_gain(in->p, gain_rad_s)}; });
}

cqnc_status cqnc_params_get(const cqnc_params* p, const char* key, double* out) {
    if (!p || !key || !out) return fail(CQNC_ERROR_INVALID_ARGUMENT, "null argument");
    const auto value = cqnc::param_by_key(p->p, key);
    if (!value) return fail(CQNC_ERROR_INVALID_ARGUMENT, std::string("unknown key: ") + key);
    *out = *value;
    g_last_error.clear();
    return CQNC_OK;
}

cqnc_status cqnc_g_from_power(const cqnc_params* p, double power_watt, double* out) {
    if (!p || !out) return fail(CQNC_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = cqnc::g_from_power(p->p, power_watt); });
}

cqnc_status cqnc_power_from_g(const cqnc_params* p, double coupling_rad_s, double* out) {
    if (!p || !out) return fail(CQNC_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = cqnc::power_from_g(p->p, coupling_rad_s); });
}

void cqnc_params_free(cqnc_params* p) {
    delete p;
}

cqnc_status cqnc_response_eval(const cqnc_params* p, cqnc_response_kind kind, double omega,
                               double* re, double* im, int* is_pole) {
    if (!p || !re || !im) return fail(CQNC_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        std::complex<double> v;
        bool pole = false;
        switch (kind) {
            case CQNC_RESPONSE_CHI_A: v = cqnc::response::chi_a(p->p, omega); break;
            case CQNC_RESPONSE_CHI_M: v = cqnc::response::chi_m(p->p, omega); break;
            case CQNC_RESPONSE_CHI_D: v = cqnc::response::chi_d(p->p, omega); break;
            case CQNC_RESPONSE_ZETA: v = cqnc::response::zeta(p->p, omega); break;
            case CQNC_RESPONSE_CHI_D_PRIME:
                v = cqnc::response::chi_d_prime(p->p, omega);
                break;
            case CQNC_RESPONSE_LAMBDA_PLUS: {
                const auto r = cqnc::response::lambda_plus(p->p, omega);
                v = r.value;
                pole = r.pole;
                break;
            }
            case CQNC_RESPONSE_LAMBDA_MINUS: {
                const auto r = cqnc::response::lambda_minus(p->p, omega);
                v = r.value;
                pole = r.pole;
                break;
            }
            default: throw std::invalid_argument("unknown response kind");
        }
        *re = v.real();
        *im = v.imag();
        if (is_pole) *is_pole = pole ? 1 : 0;
    });
}

void cqnc_setup_defaults(cqnc_run_setup* setup) {
    if (!setup) return;
    std::memset(setup, 0, sizeof *setup);
    from_run_config(cqnc::RunConfig{}, setup);
}

cqnc_status cqnc_setup_load(const char* path, cqnc_params** params_out,
                            cqnc_run_setup* setup_out) {
    if (!path || !params_out || !setup_out)
        return fail(CQNC_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const cqnc::LoadedConfig loaded = cqnc::load_config(path);
        from_run_config(loaded.run, setup_out);
        *params_out = new cqnc_params{loaded.params};
    });
}

cqnc_status cqnc_psd_table(const cqnc_params* p, const cqnc_run_setup* setup,
                           cqnc_table** out) {
    if (!p || !setup || !out) return fail(CQNC_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        *out = new cqnc_table{build_psd_table(p->p, to_run_config(*setup)), {}};
    });
}

cqnc_status cqnc_power_table(const cqnc_params* p, const cqnc_run_setup* setup,
                             cqnc_table** out) {
    if (!p || !setup || !out) return fail(CQNC_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        *out = new cqnc_table{build_power_table(p->p, to_run_config(*setup)), {}};
    });
}

cqnc_status cqnc_roots_table(const cqnc_params* p, cqnc_table** out) {
    if (!p || !out) return fail(CQNC_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = new cqnc_table{build_roots_table(p->p), {}}; });
}

cqnc_status cqnc_check_run(const cqnc_params* p, const cqnc_run_setup* setup,
                           cqnc_report** out) {
    if (!p || !setup || !out) return fail(CQNC_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto* report = new cqnc_report;
        report->r = cqnc::check::run_check(p->p, to_run_config(*setup));
        report->text = report->r.text();
        report->json = report->r.json();
        *out = report;
    });
}

int cqnc_report_passed(const cqnc_report* r) {
    return (r && r->r.all_passed) ? 1 : 0;
}

const char* cqnc_report_text(const cqnc_report* r) {
    return r ? r->text.c_str() : "";
}

const char* cqnc_report_json(const cqnc_report* r) {
    return r ? r->json.c_str() : "";
}

void cqnc_report_free(cqnc_report* r) {
    delete r;
}

size_t cqnc_table_rows(const cqnc_table* t) {
    return t ? t->t.rows.size() : 0;
}

size_t cqnc_table_cols(const cqnc_table* t) {
    return t ? t->t.columns.size() : 0;
}

const char* cqnc_table_column_name(const cqnc_table* t, size_t col) {
    if (!t || col >= t->t.columns.size()) return "";
    return t->t.columns[col].c_str();
}

cqnc_status cqnc_table_cell(const cqnc_table* t, size_t row, size_t col, double* out) {
    if (!t || !out || row >= t->t.rows.size() || col >= t->t.rows[row].size())
        return fail(CQNC_ERROR_INVALID_ARGUMENT, "cell out of range");
    if (const double* d = std::get_if<double>(&t->t.rows[row][col])) {
        *out = *d;
        g_last_error.clear();
        return CQNC_OK;
    }
    return fail(CQNC_ERROR_DOMAIN,
                "cell holds sentinel: " + std::get<std::string>(t->t.rows[row][col]));
}

size_t cqnc_table_warning_count(const cqnc_table* t) {
    return t ? t->t.warnings.size() : 0;
}

const char* cqnc_table_warning(const cqnc_table* t, size_t i) {
    if (!t || i >= t->t.warnings.size()) return "";
    return t->t.warnings[i].c_str();
}

const char* cqnc_table_render(cqnc_table* t, int as_json) {
    if (!t) return "";
    t->rendered = as_json ? cqnc::to_json(t->t) : cqnc::to_csv(t->t);
    return t->rendered.c_str();
}

cqnc_status cqnc_table_write(const cqnc_table* t, const char* path, int as_json) {
    if (!t || !path) return fail(CQNC_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        cqnc::write_file(path, as_json ? cqnc::to_json(t->t) : cqnc::to_csv(t->t));
    });
}

void cqnc_table_free(cqnc_table* t) {
    delete t;
}

}  // extern "C"
