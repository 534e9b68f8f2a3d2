/* cqnc - noise spectral density toolkit for hybrid electro-optomechanical
 * force sensing.
 *
 * C interface of the shared library. All objects are opaque handles owned by
 * the library; every fallible call returns a cqnc_status and leaves a
 * description retrievable through cqnc_last_error() (thread local). Strings
 * returned by the library stay valid until the owning handle is freed.
 */
#ifndef CQNC_H
#define CQNC_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cqnc_status {
    CQNC_OK = 0,
    CQNC_ERROR_INVALID_ARGUMENT = 1, /* null pointer, bad enum, bad grid, ... */
    CQNC_ERROR_PARSE = 2,            /* unreadable or malformed config        */
    CQNC_ERROR_DOMAIN = 3,           /* violated physical precondition        */
    CQNC_ERROR_IO = 4,               /* file could not be written             */
    CQNC_ERROR_INTERNAL = 5
} cqnc_status;

typedef struct cqnc_params cqnc_params;
typedef struct cqnc_table cqnc_table;
typedef struct cqnc_report cqnc_report;

const char* cqnc_version(void);
/* Message of the last failure on this thread; empty string if none. */
const char* cqnc_last_error(void);

/* ---- parameters ------------------------------------------------------- */

/* Reference parameter set (2pi x {300 kHz, 30 Hz, 1 MHz, 300 Hz} rates,
 * 384 THz drive at 100 mW, qubit decoupled). */
cqnc_status cqnc_params_fig2(cqnc_params** out);

/* Loads the parameter section of a config file (see README for the schema).
 * Run settings in the file are ignored here; use cqnc_setup_load. */
cqnc_status cqnc_params_load(const char* path, cqnc_params** out);

/* Copy with Delta_q = Omega, Gamma = gamma_m, G_em = g (exact). Sets
 * *hierarchy_warning (may be NULL) to 1 when Omega/Gamma < 100. */
cqnc_status cqnc_params_apply_matching(const cqnc_params* in, cqnc_params** out,
                                       int* hierarchy_warning);

cqnc_status cqnc_params_with_opa_gain(const cqnc_params* in, double gain_rad_s,
                                      cqnc_params** out);

/* Field lookup by config key ("Omega", "gamma_m", "g", "n_bar", ...). */
cqnc_status cqnc_params_get(const cqnc_params* p, const char* key, double* out);

/* Coupling from power, g = g0*sqrt(P/(2*hbar*omega_L*kappa)), and inverse. */
cqnc_status cqnc_g_from_power(const cqnc_params* p, double power_watt, double* out);
cqnc_status cqnc_power_from_g(const cqnc_params* p, double coupling_rad_s, double* out);

void cqnc_params_free(cqnc_params* p);

/* ---- response functions ------------------------------------------------ */

typedef enum cqnc_response_kind {
    CQNC_RESPONSE_CHI_A = 0,
    CQNC_RESPONSE_CHI_M = 1,
    CQNC_RESPONSE_CHI_D = 2,
    CQNC_RESPONSE_ZETA = 3,
    CQNC_RESPONSE_CHI_D_PRIME = 4, /* cancelling sign, product route */
    CQNC_RESPONSE_LAMBDA_PLUS = 5,
    CQNC_RESPONSE_LAMBDA_MINUS = 6
} cqnc_response_kind;

/* Evaluates one response function at omega (rad/s). *is_pole (may be NULL)
 * is set to 1 when the function has a pole there; re/im are 0 in that case. */
cqnc_status cqnc_response_eval(const cqnc_params* p, cqnc_response_kind kind, double omega,
                               double* re, double* im, int* is_pole);

/* ---- runs --------------------------------------------------------------- */

#define CQNC_MAX_OPA_GAINS 8

/* Run settings; cqnc_setup_defaults fills the documented defaults. Frequency
 * bounds are in units of Omega, powers in watts, gains in units of kappa. */
typedef struct cqnc_run_setup {
    double freq_min;
    double freq_max;
    size_t freq_count;
    int freq_log; /* 1 log spacing, 0 linear */

    double power_min_watt;
    double power_max_watt;
    size_t power_count;

    double opa_gains_over_kappa[CQNC_MAX_OPA_GAINS];
    size_t n_opa_gains;

    int mode;     /* 0 consistent, 1 literal */
    int chi_sign; /* 0 cancelling, 1 positive */
    int thermal;  /* 0 off, 1 on */
} cqnc_run_setup;

void cqnc_setup_defaults(cqnc_run_setup* setup);

/* Loads params and run settings together from one config file. */
cqnc_status cqnc_setup_load(const char* path, cqnc_params** params_out,
                            cqnc_run_setup* setup_out);

/* Noise PSD vs frequency: standard curve, one hybrid curve per configured
 * OPA gain, cancellation floor, and per-channel budget columns. */
cqnc_status cqnc_psd_table(const cqnc_params* p, const cqnc_run_setup* setup,
                           cqnc_table** out);

/* Noise PSD vs drive power at omega = Omega. */
cqnc_status cqnc_power_table(const cqnc_params* p, const cqnc_run_setup* setup,
                             cqnc_table** out);

/* Roots of the coupling constraint: companion-matrix roots and both quoted
 * radical variants, with per-root residuals. */
cqnc_status cqnc_roots_table(const cqnc_params* p, cqnc_table** out);

/* Full consistency check. */
cqnc_status cqnc_check_run(const cqnc_params* p, const cqnc_run_setup* setup,
                           cqnc_report** out);
int cqnc_report_passed(const cqnc_report* r); /* 1 if every check passed */
const char* cqnc_report_text(const cqnc_report* r);
const char* cqnc_report_json(const cqnc_report* r);
void cqnc_report_free(cqnc_report* r);

/* ---- tables ------------------------------------------------------------- */

size_t cqnc_table_rows(const cqnc_table* t);
size_t cqnc_table_cols(const cqnc_table* t);
const char* cqnc_table_column_name(const cqnc_table* t, size_t col);
/* CQNC_ERROR_DOMAIN when the cell holds a sentinel (e.g. "pole"). */
cqnc_status cqnc_table_cell(const cqnc_table* t, size_t row, size_t col, double* out);
size_t cqnc_table_warning_count(const cqnc_table* t);
const char* cqnc_table_warning(const cqnc_table* t, size_t i);
/* Serializes the table; as_json = 0 writes CSV. Deterministic: identical
 * inputs produce byte-identical files. */
const char* cqnc_table_render(cqnc_table* t, int as_json);
cqnc_status cqnc_table_write(const cqnc_table* t, const char* path, int as_json);
void cqnc_table_free(cqnc_table* t);

#ifdef __cplusplus
}
#endif

#endif /* CQNC_H */
