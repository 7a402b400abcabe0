// activeris - active/passive RIS signal models and beamforming optimization
// Copyright (C) 2026 The activeris authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

/* C interface to activeris. All functions return an aris_status; on failure
 * aris_last_error() holds a message for the calling thread. Handles are
 * opaque and owned by the caller, who releases them with the matching
 * *_free function. Powers are in watts unless the name says dBW. */

#ifndef ACTIVERIS_ACTIVERIS_H
#define ACTIVERIS_ACTIVERIS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ACTIVERIS_BUILDING_LIBRARY)
#    define ARIS_API __declspec(dllexport)
#  else
#    define ARIS_API __declspec(dllimport)
#  endif
#else
#  define ARIS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum aris_status {
    ARIS_OK = 0,
    ARIS_ERR_INVALID_ARGUMENT = 1, /* null pointer, bad index, bad enum */
    ARIS_ERR_DOMAIN = 2,           /* input outside the model's domain */
    ARIS_ERR_CONFIG = 3,           /* malformed config text or value */
    ARIS_ERR_INFEASIBLE = 4,       /* RIS noise floor exceeds its budget */
    ARIS_ERR_NUMERICAL = 5,        /* singular system that regularization could not fix */
    ARIS_ERR_IO = 6,
    ARIS_ERR_INTERNAL = 7
} aris_status;

typedef enum aris_method {
    ARIS_METHOD_NO_RIS = 0,
    ARIS_METHOD_PASSIVE_RIS = 1,
    ARIS_METHOD_ACTIVE_RIS = 2
} aris_method;

typedef enum aris_suite {
    ARIS_SUITE_ALL = 0,
    ARIS_SUITE_IDENTITIES = 1,
    ARIS_SUITE_OPTIMIZER = 2,
    ARIS_SUITE_QCQP = 3,
    ARIS_SUITE_ASYMPTOTICS = 4
} aris_suite;

typedef struct aris_scenario aris_scenario;
typedef struct aris_sweep aris_sweep;
typedef struct aris_report aris_report;

ARIS_API const char* aris_version(void);
ARIS_API const char* aris_status_string(aris_status status);
/* Message of the last failure on this thread; empty if none. */
ARIS_API const char* aris_last_error(void);

/* "10 dBW", "-70dBm", "0.5 W", "-70 dB" (ratio), or a bare number. */
ARIS_API aris_status aris_parse_quantity(const char* text, double* out);

ARIS_API aris_status aris_method_parse(const char* text, aris_method* out);
ARIS_API const char* aris_method_name(aris_method method);
ARIS_API aris_status aris_suite_parse(const char* text, aris_suite* out);

/* ---- scenarios ---------------------------------------------------------- */

/* which = 1 (weak direct link) or 2 (strong direct link). */
ARIS_API aris_status aris_scenario_builtin(int which, aris_scenario** out);
ARIS_API aris_status aris_scenario_parse(const char* text, aris_scenario** out);
ARIS_API aris_status aris_scenario_load(const char* path, aris_scenario** out);
ARIS_API void aris_scenario_free(aris_scenario* scenario);

ARIS_API aris_status aris_scenario_set_seed(aris_scenario* scenario, uint64_t seed);
ARIS_API aris_status aris_scenario_set_trials(aris_scenario* scenario, int trials);
ARIS_API aris_status aris_scenario_set_threads(aris_scenario* scenario, int threads);
ARIS_API aris_status aris_scenario_set_powers_dbw(aris_scenario* scenario, const double* values,
                                                  size_t count);
ARIS_API aris_status aris_scenario_get_seed(const aris_scenario* scenario, uint64_t* out);
ARIS_API aris_status aris_scenario_get_trials(const aris_scenario* scenario, int* out);

/* Writes the scenario in config-file form. `needed` (optional) receives the
 * size including the terminator; the text is truncated to fit `capacity`. */
ARIS_API aris_status aris_scenario_format(const aris_scenario* scenario, char* buffer,
                                          size_t capacity, size_t* needed);

/* ---- sweeps ------------------------------------------------------------- */

typedef struct aris_result_row {
    aris_method method;
    double total_power_dbw;
    double mean_sum_rate_bps;
    double stderr_bps;
    int trials;
    double converged_fraction;
} aris_result_row;

/* Called after each finished trial, from one thread at a time. */
typedef void (*aris_progress_fn)(int done, int total, void* user);

ARIS_API aris_status aris_sweep_run(const aris_scenario* scenario, aris_progress_fn progress,
                                    void* user, aris_sweep** out);
ARIS_API void aris_sweep_free(aris_sweep* sweep);
ARIS_API size_t aris_sweep_row_count(const aris_sweep* sweep);
ARIS_API aris_status aris_sweep_row(const aris_sweep* sweep, size_t index, aris_result_row* out);
/* (method - no_ris) / no_ris at one power; ARIS_ERR_DOMAIN if a row is missing. */
ARIS_API aris_status aris_sweep_relative_gain(const aris_sweep* sweep, aris_method method,
                                              double total_power_dbw, double* out);
/* path "-" writes to stdout. */
ARIS_API aris_status aris_sweep_write_csv(const aris_sweep* sweep, const char* path);

/* ---- asymptotic analysis ------------------------------------------------ */

typedef struct aris_asymptotic_config {
    int n_elements;
    double bs_power;
    double ris_power;
    double var_f; /* RIS-user per-entry variance */
    double var_g; /* BS-RIS per-entry variance */
    double sigma2;
    double sigma_v2;
} aris_asymptotic_config;

/* Reference comparison: 2 W total, split evenly for the active system,
 * -70 dBm noise, -70 dB path loss on both hops, N = 256. */
ARIS_API void aris_asymptotic_reference(aris_asymptotic_config* passive,
                                        aris_asymptotic_config* active);
ARIS_API aris_status aris_passive_snr(const aris_asymptotic_config* cfg, double* out);
ARIS_API aris_status aris_active_snr(const aris_asymptotic_config* cfg, double* out);
ARIS_API aris_status aris_active_snr_limits(const aris_asymptotic_config* cfg, double* bs_limit,
                                            double* ris_limit);
ARIS_API aris_status aris_breakeven_elements(const aris_asymptotic_config* active,
                                             double bs_power_passive, double* out);

/* Analytic and Monte Carlo SNRs of the reference comparison for each N in
 * n_grid (NULL selects 64, 256, 1024, 4096), plus a break-even row, as CSV. */
ARIS_API aris_status aris_asymptotics_write_csv(const int* n_grid, size_t count, int trials,
                                                uint64_t seed, const char* path);

/* ---- validation --------------------------------------------------------- */

typedef struct aris_check {
    const char* suite;
    const char* name;
    int passed;
    double measured;
    double threshold;
    const char* detail;
} aris_check;

/* inject_mutation != 0 runs the optimizer with a sign-flipped rho update. */
ARIS_API aris_status aris_validate(aris_suite suite, uint64_t seed, int inject_mutation,
                                   aris_report** out);
ARIS_API void aris_report_free(aris_report* report);
ARIS_API int aris_report_passed(const aris_report* report);
ARIS_API size_t aris_report_check_count(const aris_report* report);
/* Strings stay valid until the report is freed. */
ARIS_API aris_status aris_report_check(const aris_report* report, size_t index, aris_check* out);
ARIS_API const char* aris_report_json(const aris_report* report);

#ifdef __cplusplus
}
#endif

#endif /* ACTIVERIS_ACTIVERIS_H */
