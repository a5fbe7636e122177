/* SPDX-License-Identifier: Apache-2.0
 *
 * fdwlan — power consumption and energy-efficiency toolkit for saturated
 * IEEE 802.11 DCF WLANs in half-duplex and in-band full-duplex modes.
 *
 * C interface of the shared library. All functions return fdw_status;
 * FDW_OK is 0. On failure fdw_last_error() returns a thread-local
 * human-readable message. Handles are opaque and owned by the caller via
 * the matching *_destroy call. The library itself is thread-safe for
 * concurrent use of distinct handles; a single handle must not be
 * mutated concurrently.
 */
#ifndef FDWLAN_H
#define FDWLAN_H

#include <stdint.h>

#if defined(_WIN32)
#define FDWLAN_API __declspec(dllexport)
#else
#define FDWLAN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fdw_status {
    FDW_OK = 0,
    FDW_EINVAL = 1,       /* bad argument or malformed input */
    FDW_EVALIDATION = 2,  /* a model invariant is violated */
    FDW_EIO = 3,          /* file could not be read or written */
    FDW_ENOCONVERGE = 4,  /* fixed-point solver did not converge */
    FDW_ECOMPARE = 5      /* comparison ran but exceeded tolerance */
} fdw_status;

typedef enum fdw_mode {
    FDW_MODE_HD = 0,   /* half duplex */
    FDW_MODE_IBFD = 1  /* in-band full duplex */
} fdw_mode;

typedef enum fdw_role { FDW_ROLE_AP = 0, FDW_ROLE_STA = 1 } fdw_role;

typedef struct fdw_model fdw_model;    /* config + power profile + traffic */
typedef struct fdw_report fdw_report;  /* one simulation run */

FDWLAN_API const char* fdw_version(void);
FDWLAN_API const char* fdw_status_str(fdw_status status);
FDWLAN_API const char* fdw_last_error(void);

/* ---- model ---------------------------------------------------------- */

/* A fresh model carries the built-in 802.11ac defaults. */
FDWLAN_API fdw_model* fdw_model_create(void);
FDWLAN_API void fdw_model_destroy(fdw_model* model);

/* Loads a `key = value` config file (unknown keys are an error) and
 * validates the result. */
FDWLAN_API fdw_status fdw_model_load_file(fdw_model* model, const char* path);

/* Sets one field by its config-file key, e.g. "n_nodes", "symmetry",
 * "tx_w". Values are parsed like config-file values. Validation happens
 * at use (or via fdw_model_validate). */
FDWLAN_API fdw_status fdw_model_set(fdw_model* model, const char* key, const char* value);
FDWLAN_API fdw_status fdw_model_get(const fdw_model* model, const char* key,
                                    double* out_value);
FDWLAN_API fdw_status fdw_model_validate(const fdw_model* model);

/* ---- analytics ------------------------------------------------------ */

typedef struct fdw_node_metrics {
    double power_w;
    double expected_energy_uj;
    double expected_slot_us;
    double throughput_share_mbps;
} fdw_node_metrics;

typedef struct fdw_network_metrics {
    fdw_node_metrics ap;
    fdw_node_metrics sta;
    double node_mean_power_w;
    double network_throughput_mbps;
    double network_power_w;
    double efficiency_mbpj;
    double tau_ap, tau_sta, p_ap, p_sta;
    double p_tr, p_s;
    double expected_slot_us;
} fdw_network_metrics;

FDWLAN_API fdw_status fdw_analytic(const fdw_model* model, fdw_mode mode,
                                   fdw_network_metrics* out);

/* Per-state (energy, probability) table for a role: 6 states for a
 * half-duplex node, 3 for the full-duplex AP, 5 for a full-duplex
 * station. Labels are UTF-8. */
FDWLAN_API fdw_status fdw_ledger_size(const fdw_model* model, fdw_mode mode, fdw_role role,
                                      int* out_size);
FDWLAN_API fdw_status fdw_ledger_entry(const fdw_model* model, fdw_mode mode, fdw_role role,
                                       int index, char* label, int label_capacity,
                                       double* out_energy_uj, double* out_probability);

/* ---- simulation ------------------------------------------------------ */

/* Runs `slots` renewal slots (statistics start after `warmup`). The run
 * is bit-reproducible for a given seed. */
FDWLAN_API fdw_status fdw_simulate(const fdw_model* model, fdw_mode mode, uint64_t slots,
                                   uint64_t warmup, uint64_t seed, fdw_report** out);
FDWLAN_API void fdw_report_destroy(fdw_report* report);

/* Empirical metrics in the same shape as the analytic ones (tau/p are the
 * measured attempt and collision rates; sta fields average the stations). */
FDWLAN_API fdw_status fdw_report_metrics(const fdw_report* report,
                                         fdw_network_metrics* out);
FDWLAN_API fdw_status fdw_report_elapsed_us(const fdw_report* report, double* out);
FDWLAN_API fdw_status fdw_report_node_count(const fdw_report* report, int* out);
FDWLAN_API fdw_status fdw_report_state_count(const fdw_report* report, int node,
                                             int* out_count);

/* Per-node per-state occupancy. `node` 0 is the AP. */
FDWLAN_API fdw_status fdw_report_state(const fdw_report* report, int node, int state,
                                       char* label, int label_capacity, uint64_t* out_count,
                                       double* out_slot_us, double* out_energy_uj);

/* ---- sweep and comparison ------------------------------------------- */

typedef enum fdw_format { FDW_FORMAT_CSV = 0, FDW_FORMAT_SVG = 1 } fdw_format;

typedef struct fdw_sweep_spec {
    const int* n_values;
    int n_count;
    const double* rho_values;
    int rho_count;
    int include_hd;        /* booleans */
    int include_ibfd;
    int include_analytic;
    int include_sim;
    const uint64_t* seeds; /* one sim row per seed */
    int seed_count;
    uint64_t slots;
    uint64_t warmup;
    fdw_format format;
} fdw_sweep_spec;

/* Evaluates the grid and writes CSV (or a best-effort SVG chart) to
 * out_path. Deterministic: identical spec and seeds give identical bytes. */
FDWLAN_API fdw_status fdw_sweep(const fdw_model* model, const fdw_sweep_spec* spec,
                                const char* out_path);

/* Pairs the rows of two CSV files by (mode, n, rho, role) — multiple seeds
 * per key enter as their mean — and checks relative errors for power and
 * efficiency against the tolerance. Returns FDW_OK on PASS, FDW_ECOMPARE
 * on FAIL. When report_path is non-NULL the per-key table is written
 * there ("-" for stdout). */
FDWLAN_API fdw_status fdw_compare_files(const char* csv_a, const char* csv_b,
                                        double tolerance, const char* report_path);

/* Same comparison, but within one combined file: its analytic rows become
 * the reference side and its sim rows the other. */
FDWLAN_API fdw_status fdw_compare_sources(const char* csv_path, double tolerance,
                                          const char* report_path);

#ifdef __cplusplus
}
#endif

#endif /* FDWLAN_H */
