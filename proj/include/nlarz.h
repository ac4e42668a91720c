/* nlarz: non-local look-ahead ARZ traffic flow solver — C API.
 *
 * All entry points return nlarz_status; functions that can fail with a
 * human-readable reason take an optional (err, err_cap) buffer that receives
 * a NUL-terminated message. Objects returned through out-parameters are
 * owned by the caller and released with the matching *_free function.
 * Handles are opaque; the library is safe for concurrent use on distinct
 * handles. */

#ifndef NLARZ_H
#define NLARZ_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nlarz_status {
    NLARZ_OK = 0,
    NLARZ_ERR_ARG = 1,    /* null pointer, unknown name, short buffer */
    NLARZ_ERR_CONFIG = 2, /* config parse or validation failure */
    NLARZ_ERR_SOLVER = 3, /* scheme left its admissible region */
    NLARZ_ERR_IO = 4      /* file could not be read or written */
} nlarz_status;

const char* nlarz_version(void);

/* ------------------------------------------------------------------ */
/* Run configuration                                                   */

typedef struct nlarz_config nlarz_config;

/* A config with the reference ring-road defaults. */
nlarz_status nlarz_config_create(nlarz_config** out);

/* Parses key = value text ('#' comments); unknown keys are fatal and are
 * reported through err with their line number. */
nlarz_status nlarz_config_parse(const char* text, nlarz_config** out,
                                char* err, size_t err_cap);
nlarz_status nlarz_config_load(const char* path, nlarz_config** out,
                               char* err, size_t err_cap);
void nlarz_config_free(nlarz_config* cfg);

nlarz_status nlarz_config_set(nlarz_config* cfg, const char* key,
                              const char* value, char* err, size_t err_cap);
nlarz_status nlarz_config_get(const nlarz_config* cfg, const char* key,
                              char* value, size_t value_cap);

/* ------------------------------------------------------------------ */
/* Constitutive laws and linear stability (point queries)              */

/* Equilibrium speed V(rho) [m/s] under the config's fundamental diagram. */
nlarz_status nlarz_equilibrium_speed(const nlarz_config* cfg, double rho,
                                     double* out);
/* Pressure h(rho) [m/s] under the config's pressure law. */
nlarz_status nlarz_pressure(const nlarz_config* cfg, double rho, double* out);

/* Closed-form criterion margin (positive = stable) and the maximum real
 * part of the dispersion roots at one (rho0, k, lookahead) point; tau and
 * the laws come from the config. Either output pointer may be NULL. */
nlarz_status nlarz_stability_point(const nlarz_config* cfg, double rho0,
                                   double k, double lookahead, double* margin,
                                   double* max_growth);

/* ------------------------------------------------------------------ */
/* Simulation runs                                                     */

typedef struct nlarz_run nlarz_run;

/* Runs the config's scenario to completion and returns the sampled
 * trajectory with its convergence metrics. */
nlarz_status nlarz_simulate(const nlarz_config* cfg, nlarz_run** out,
                            char* err, size_t err_cap);
void nlarz_run_free(nlarz_run* run);

size_t nlarz_run_samples(const nlarz_run* run);
size_t nlarz_run_cells(const nlarz_run* run);
int nlarz_run_is_mixed(const nlarz_run* run);

/* Sample instants [s]; out must hold nlarz_run_samples() doubles. */
nlarz_status nlarz_run_times(const nlarz_run* run, double* out, size_t cap);

/* One field of one sample; out must hold nlarz_run_cells() doubles.
 * Fields: "rho", "v", "x"; mixed runs add "rho_h", "v_h", "rho_c", "v_c"
 * (rho is then the total density and v the flow-weighted mean speed). */
nlarz_status nlarz_run_field(const nlarz_run* run, size_t sample,
                             const char* field, double* out, size_t cap);

/* Scalar summaries: "initial_amplitude", "peak_amplitude",
 * "final_amplitude", "fitted_rate", "convergence_time" (NLARZ_ERR_ARG when
 * no convergence event was recorded), "mass_drift" (relative, per run),
 * "clamp_events". */
nlarz_status nlarz_run_metric(const nlarz_run* run, const char* name,
                              double* out);

/* Amplitude series (max-min of density per sample); out must hold
 * nlarz_run_samples() doubles. */
nlarz_status nlarz_run_amplitudes(const nlarz_run* run, double* out,
                                  size_t cap);

/* ------------------------------------------------------------------ */
/* Command backends                                                    */

/* The CLI subcommands. Each writes its output files (see the config's
 * output_dir) and prints run summaries to stdout; the returned status is
 * the process exit code. Ranges are "lo:hi:n" inclusive linspaces. */
nlarz_status nlarz_cmd_simulate(const char* config_path, char* err,
                                size_t err_cap);
nlarz_status nlarz_cmd_stability(const char* config_path,
                                 const char* rho_range, const char* k_range,
                                 const char* lookahead_range, char* err,
                                 size_t err_cap);
nlarz_status nlarz_cmd_sweep(const char* preset, const char* out_dir,
                             char* err, size_t err_cap);

#ifdef __cplusplus
}
#endif

#endif /* NLARZ_H */
