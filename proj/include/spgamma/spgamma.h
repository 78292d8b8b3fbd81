// SPDX-License-Identifier: Apache-2.0
//
// spgamma: coherent Smith-Purcell gamma-ray emission from resonant nuclei
// Copyright (C) 2026 The spgamma authors
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

/* C interface to libspgamma. All functions report failures through an
 * spg_status; spg_last_error() then describes the most recent failure on the
 * calling thread. Handles are opaque and owned by the caller. Strings returned
 * by accessors stay valid until the owning handle is destroyed. */

#ifndef SPGAMMA_SPGAMMA_H
#define SPGAMMA_SPGAMMA_H

#include <stddef.h>
#include <stdint.h>

#if defined(SPG_BUILDING_LIBRARY)
#define SPG_API __attribute__((visibility("default")))
#else
#define SPG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum spg_status {
    SPG_OK = 0,
    SPG_ERR_INVALID_ARGUMENT = 1, /* null handle or pointer */
    SPG_ERR_DOMAIN = 2,           /* physically meaningless input */
    SPG_ERR_CONVERGENCE = 3,
    SPG_ERR_PARSE = 4,            /* malformed data file */
    SPG_ERR_NOT_FOUND = 5,        /* unknown nuclide, preset or table */
    SPG_ERR_VALIDATION = 6,       /* config rejected, see spg_diagnostics */
    SPG_ERR_RUNTIME = 7,          /* I/O and other runtime failures */
    SPG_ERR_INTERNAL = 8
} spg_status;

/* Environment variable naming a directory with nuclides.dat / lattices.dat. */
#define SPG_DATA_DIR_ENV "SPGAMMA_DATA_DIR"

SPG_API const char* spg_version(void);
SPG_API const char* spg_status_name(spg_status status);
SPG_API const char* spg_last_error(void);

/* Registries -------------------------------------------------------------- */

typedef struct spg_registry spg_registry;

/* Built-in nuclides and lattice presets only. */
SPG_API spg_status spg_registry_create_builtin(spg_registry** out);
/* Built-ins, then nuclides.dat and lattices.dat from $SPGAMMA_DATA_DIR when present. */
SPG_API spg_status spg_registry_create(spg_registry** out);
SPG_API void spg_registry_destroy(spg_registry* registry);

SPG_API spg_status spg_registry_load_nuclides(spg_registry* registry, const char* path);
SPG_API spg_status spg_registry_load_lattices(spg_registry* registry, const char* path);

SPG_API size_t spg_registry_nuclide_count(const spg_registry* registry);
SPG_API const char* spg_registry_nuclide_name(const spg_registry* registry, size_t index);
SPG_API size_t spg_registry_lattice_count(const spg_registry* registry);
SPG_API const char* spg_registry_lattice_name(const spg_registry* registry, size_t index);

typedef struct spg_nuclide_info {
    double e0_keV;
    double lifetime_s;
    double alpha_ic;
    double j_g;
    double j_e;
    double branch_divisor;
    long long f_num; /* coherent fraction f = f_num / f_den */
    long long f_den;
    double radiative_rate_per_s;
    double wavelength_nm;
    double linewidth_eV;
} spg_nuclide_info;

SPG_API spg_status spg_nuclide_get(const spg_registry* registry, const char* name, spg_nuclide_info* out);

typedef struct spg_lattice_info {
    double a_nm;
    double b_par_x_nm;
    double b_par_y_nm;
    double b_z_nm;
    double d_nm;
    int stacking_period;
} spg_lattice_info;

SPG_API spg_status spg_lattice_get(const spg_registry* registry, const char* name, spg_lattice_info* out);

/* Direct physics ------------------------------------------------------------ */

typedef struct spg_probe {
    int charge;            /* in units of e */
    double rest_energy_eV;
    double beta;
} spg_probe;

SPG_API spg_status spg_coherent_yield(const spg_registry* registry, const char* nuclide, const spg_probe* probe,
                                      double r_perp_nm, double* out);

/* Per-layer, per-Z^2 crystal yield with a hard cutoff 1/r_min; order_cap 0 keeps all orders. */
SPG_API spg_status spg_layer_yield(const spg_registry* registry, const char* nuclide, const char* lattice,
                                   const spg_probe* probe, double r_min_nm, int order_cap, double* out);

SPG_API spg_status spg_br_window_yield(const spg_probe* probe, int z_nucleus, double r_perp_nm, double center_eV,
                                       double window_eV, double* out);

/* Scenarios ----------------------------------------------------------------- */

typedef struct spg_config spg_config;
typedef struct spg_diagnostics spg_diagnostics;
typedef struct spg_result spg_result;

/* Validates a JSON config. On SPG_ERR_VALIDATION *out_config is null and
 * *out_diagnostics lists every problem. *out_diagnostics is always set on
 * SPG_OK and SPG_ERR_VALIDATION (possibly empty) and must be destroyed. */
SPG_API spg_status spg_config_parse(const spg_registry* registry, const char* text, spg_config** out_config,
                                    spg_diagnostics** out_diagnostics);
SPG_API void spg_config_destroy(spg_config* config);
/* Config with defaults applied, as JSON. */
SPG_API const char* spg_config_resolved(const spg_config* config);

SPG_API size_t spg_diagnostics_count(const spg_diagnostics* diagnostics);
/* Field path ("probe.beta"), empty for syntax errors. */
SPG_API const char* spg_diagnostics_path(const spg_diagnostics* diagnostics, size_t index);
/* Message text; syntax errors start with "line L, column C". */
SPG_API const char* spg_diagnostics_message(const spg_diagnostics* diagnostics, size_t index);
SPG_API void spg_diagnostics_destroy(spg_diagnostics* diagnostics);

/* threads >= 1; results do not depend on it. seed drives Monte-Carlo checks. */
SPG_API spg_status spg_run(const spg_config* config, int threads, uint64_t seed, spg_result** out);
SPG_API void spg_result_destroy(spg_result* result);

SPG_API size_t spg_result_table_count(const spg_result* result);
SPG_API const char* spg_result_table_name(const spg_result* result, size_t index);
/* Table as CSV text with its metadata header. */
SPG_API const char* spg_result_table_csv(const spg_result* result, size_t index);

/* Writes every table into dir (created if needed). */
SPG_API spg_status spg_result_write(spg_result* result, const char* dir);
/* Paths written by the last spg_result_write. */
SPG_API size_t spg_result_path_count(const spg_result* result);
SPG_API const char* spg_result_path(const spg_result* result, size_t index);

#ifdef __cplusplus
}
#endif

#endif
