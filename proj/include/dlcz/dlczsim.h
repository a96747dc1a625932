/*
 * Copyright 2026 The dlczsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface of libdlczsim.
 *
 * Objects are opaque handles created by the library and released with the matching *_free
 * function. Every fallible call returns a dlcz_status; on failure dlcz_last_error() holds a
 * message for the calling thread until its next failing call. Strings returned through char**
 * out-parameters are heap allocated and must be released with dlcz_string_free().
 */

#ifndef DLCZSIM_H
#define DLCZSIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(DLCZ_BUILDING_LIBRARY)
#define DLCZ_API __attribute__((visibility("default")))
#else
#define DLCZ_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dlcz_status {
    DLCZ_OK = 0,
    DLCZ_ERR_PARSE = 1,      /* malformed config or data file */
    DLCZ_ERR_INVALID = 2,    /* config violates an invariant */
    DLCZ_ERR_DOMAIN = 3,     /* argument outside its domain, unknown key or parameter */
    DLCZ_ERR_CONTRACT = 4,   /* precondition on data shape broken */
    DLCZ_ERR_UNDEFINED = 5,  /* correlation undefined (zero normalization) */
    DLCZ_ERR_IO = 6,         /* filesystem failure */
    DLCZ_ERR_ARGUMENT = 7,   /* null handle or pointer */
    DLCZ_ERR_INTERNAL = 8
} dlcz_status;

typedef struct dlcz_config dlcz_config;
typedef struct dlcz_run dlcz_run;
typedef struct dlcz_oracle dlcz_oracle;

typedef struct dlcz_run_options {
    uint64_t trials;     /* 0: use the config's n_trials */
    uint64_t seed;       /* used only when has_seed != 0 */
    int has_seed;
    unsigned workers;    /* 0 or 1: single-threaded */
    int keep_events;     /* keep per-detector click streams (exported as events.csv) */
} dlcz_run_options;

/* Which normalized correlation to read from a run or oracle. */
typedef enum dlcz_correlation {
    DLCZ_G11 = 0,    /* detectors (A, B) */
    DLCZ_G22 = 1,    /* detectors (C, D) */
    DLCZ_G12 = 2,    /* detectors (A, C) */
    DLCZ_G12_BD = 3  /* detectors (B, D) */
} dlcz_correlation;

DLCZ_API const char *dlcz_version(void);
DLCZ_API const char *dlcz_last_error(void);
DLCZ_API const char *dlcz_status_name(dlcz_status status);
DLCZ_API void dlcz_string_free(char *text);

/* Config */
DLCZ_API dlcz_status dlcz_config_preset(dlcz_config **out);
DLCZ_API dlcz_status dlcz_config_parse(const char *text, dlcz_config **out);
DLCZ_API dlcz_status dlcz_config_load(const char *path, dlcz_config **out);
/* Sets one key from text; the config is not re-validated until it is used. */
DLCZ_API dlcz_status dlcz_config_set(dlcz_config *config, const char *key, const char *value);
DLCZ_API dlcz_status dlcz_config_get(const dlcz_config *config, const char *key, double *value);
DLCZ_API dlcz_status dlcz_config_render(const dlcz_config *config, char **text);
/* DLCZ_OK if valid; otherwise DLCZ_ERR_INVALID with one "key: message" per line in *violations. */
DLCZ_API dlcz_status dlcz_config_validate(const dlcz_config *config, char **violations);
DLCZ_API void dlcz_config_free(dlcz_config *config);

/* Monte Carlo runs */
DLCZ_API void dlcz_run_options_init(dlcz_run_options *options);
DLCZ_API dlcz_status dlcz_run_simulate(const dlcz_config *config, const dlcz_run_options *options, dlcz_run **out);
DLCZ_API dlcz_status dlcz_run_report(const dlcz_run *run, char **text);
/* DLCZ_ERR_UNDEFINED when the pair has no cross-trial coincidences. */
DLCZ_API dlcz_status dlcz_run_correlation(const dlcz_run *run, dlcz_correlation which, double *value,
                                          double *sigma);
DLCZ_API dlcz_status dlcz_run_peak_areas(const dlcz_run *run, dlcz_correlation which, uint64_t *same_trial,
                                         double *baseline_mean);
DLCZ_API dlcz_status dlcz_run_singles_rates(const dlcz_run *run, double *stokes, double *antistokes);
DLCZ_API dlcz_status dlcz_run_wall_time(const dlcz_run *run, double *seconds);
/* Writes report, histograms, events (if kept) and manifest; *files lists the names, one per line. */
DLCZ_API dlcz_status dlcz_run_export(dlcz_run *run, const char *directory, char **files);
DLCZ_API void dlcz_run_free(dlcz_run *run);

/* Parameter sweep: CSV table in *table. */
DLCZ_API dlcz_status dlcz_sweep(const dlcz_config *config, const char *parameter, const double *values,
                                size_t n_values, const dlcz_run_options *options, char **table);

/* Fock-space oracle */
DLCZ_API dlcz_status dlcz_oracle_compute(const dlcz_config *config, unsigned n_max, dlcz_oracle **out);
DLCZ_API dlcz_status dlcz_oracle_report(const dlcz_oracle *oracle, char **text);
DLCZ_API dlcz_status dlcz_oracle_correlation(const dlcz_oracle *oracle, dlcz_correlation which, double *value);
DLCZ_API void dlcz_oracle_free(dlcz_oracle *oracle);

/* z-score table of a run against an oracle; *n_flagged counts |z| > threshold. */
DLCZ_API dlcz_status dlcz_compare(const dlcz_run *run, const dlcz_oracle *oracle, double threshold, char **table,
                                  size_t *n_flagged);

#ifdef __cplusplus
}
#endif

#endif /* DLCZSIM_H */
