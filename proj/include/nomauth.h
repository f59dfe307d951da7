/*
 * C API for the grant-free NOMA access-based authentication simulator.
 *
 * Opaque handles + status codes. Every function that can fail returns a
 * nomauth_status; nomauth_last_error() holds a thread-local message for the
 * most recent failure on the calling thread.
 */
#ifndef NOMAUTH_H
#define NOMAUTH_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nomauth_status {
  NOMAUTH_OK = 0,
  NOMAUTH_ERR_INVALID_ARGUMENT = 1, /* bad handle, key, or value */
  NOMAUTH_ERR_VALIDATION = 2,       /* configuration rejected */
  NOMAUTH_ERR_IO = 3,               /* file read/write failed */
  NOMAUTH_ERR_DEGENERATE = 4,       /* degenerate seed path */
  NOMAUTH_ERR_INTERNAL = 5
} nomauth_status;

typedef struct nomauth_config nomauth_config;
typedef struct nomauth_results nomauth_results;

const char* nomauth_version(void);
const char* nomauth_last_error(void);

/* --- configuration ------------------------------------------------------ */

nomauth_config* nomauth_config_create(void);
void nomauth_config_destroy(nomauth_config* cfg);

/* Overlays a JSON config file onto the current values. */
nomauth_status nomauth_config_load_file(nomauth_config* cfg, const char* path);

/*
 * Integer keys: devices resources active slots schedule_len trials
 *   adversaries seed_width candidates baseline_taps calibration_size
 *   workers trial_offset master_seed baseline (0/1)
 * Double keys: sparsity zeta adversary_transmit_prob adversary_channel_corr
 *   csi_noise_var sequence_tol dist_min_km dist_max_km slot_duration_s
 * String keys: poly strategy adversary_knowledge seed_variant alphabet
 *   format output verdicts snr_db (comma list, "inf" allowed)
 */
nomauth_status nomauth_config_set_int(nomauth_config* cfg, const char* key,
                                      long long value);
nomauth_status nomauth_config_set_double(nomauth_config* cfg, const char* key,
                                         double value);
nomauth_status nomauth_config_set_string(nomauth_config* cfg, const char* key,
                                         const char* value);
nomauth_status nomauth_config_set_snr_list(nomauth_config* cfg,
                                           const double* values, size_t count);

/* Reads back any integer key listed above. */
nomauth_status nomauth_config_get_int(const nomauth_config* cfg,
                                      const char* key, long long* out);

/* Validates; warning lines (e.g. a non-primitive polynomial) are retrievable
 * afterwards. */
nomauth_status nomauth_config_validate(nomauth_config* cfg);
size_t nomauth_config_warning_count(const nomauth_config* cfg);
const char* nomauth_config_warning(const nomauth_config* cfg, size_t index);

/* --- campaigns ----------------------------------------------------------- */

nomauth_status nomauth_campaign_run(const nomauth_config* cfg,
                                    nomauth_results** out);
void nomauth_results_destroy(nomauth_results* results);

/* Appends all campaigns of `src` to `dst` (sweep assembly). `src` is left
 * empty but must still be destroyed. */
nomauth_status nomauth_results_append(nomauth_results* dst,
                                      nomauth_results* src);

/* Flattened (campaign x SNR point) view. */
size_t nomauth_results_point_count(const nomauth_results* results);

/* Metric names: snr_db rho_fa_paper rho_fa_cond rho_md_paper rho_md_cond
 * rho_sc ci95_fa ci95_md cost_proposed cost_baseline baseline_fa_cond
 * baseline_md_cond fa_events md_events trials_done trials_skipped */
nomauth_status nomauth_results_metric(const nomauth_results* results,
                                      size_t point, const char* name,
                                      double* out);

/* Renders "csv" or "json". The returned string is malloc'd; release it with
 * nomauth_string_free. */
nomauth_status nomauth_results_to_string(const nomauth_results* results,
                                         const char* format, char** out);
void nomauth_string_free(char* s);

/* Writes to `path`; NULL or "" writes to stdout. */
nomauth_status nomauth_results_write(const nomauth_results* results,
                                     const char* format, const char* path);
nomauth_status nomauth_results_write_verdicts(const nomauth_results* results,
                                              const char* path);

/* --- acceptance-property suite ------------------------------------------ */

typedef void (*nomauth_verify_callback)(int id, const char* name, int pass,
                                        const char* detail, double seconds,
                                        void* user);

/* Runs the acceptance-property suite (quick != 0 shrinks the Monte Carlo
 * sizes for a smoke run). Sets *all_passed to 1 when every criterion holds. */
nomauth_status nomauth_verify_run(int quick, int workers,
                                  nomauth_verify_callback callback, void* user,
                                  int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* NOMAUTH_H */
