/*
 * holoworld — C API for the phase-vector world-model library.
 *
 * Every function that can fail returns an hw_status; HW_OK is 0. On failure,
 * hw_last_error() returns a human-readable message for the calling thread.
 * Objects returned through out-parameters are owned by the caller and must be
 * released with the matching *_free function.
 */
#ifndef HOLOWORLD_H
#define HOLOWORLD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(HW_BUILDING_SHARED)
#define HW_API __declspec(dllexport)
#else
#define HW_API __declspec(dllimport)
#endif
#else
#define HW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hw_status {
  HW_OK = 0,
  HW_ERR_INVALID_ARGUMENT = 1, /* bad index, range, or argument combination */
  HW_ERR_PARSE = 2,            /* config parse/validation failure */
  HW_ERR_IO = 3,               /* file read/write failure */
  HW_ERR_INTERNAL = 4          /* anything else */
} hw_status;

/* Library version string, e.g. "0.1.0". Never NULL. */
HW_API const char* hw_version(void);

/* Message from the calling thread's most recent failing call. Never NULL;
 * empty when no error has occurred. Valid until the thread's next API call. */
HW_API const char* hw_last_error(void);

/* ------------------------------------------------------------------ */
/* Configuration: flat key=value settings with documented defaults.    */
/* ------------------------------------------------------------------ */

typedef struct hw_config hw_config;

/* A config holding every key's default value. */
HW_API hw_status hw_config_create(hw_config** out);

/* Parse a config file (key = value lines, '#' comments). */
HW_API hw_status hw_config_load(const char* path, hw_config** out);

/* Set one key from its textual form; unknown keys and malformed values fail
 * with HW_ERR_PARSE and a diagnostic naming the key. */
HW_API hw_status hw_config_set(hw_config* cfg, const char* key, const char* value);

/* Copy one key's textual value into buf (NUL-terminated). Fails with
 * HW_ERR_INVALID_ARGUMENT if buf_len is too small. */
HW_API hw_status hw_config_get(const hw_config* cfg, const char* key, char* buf,
                               size_t buf_len);

HW_API void hw_config_free(hw_config* cfg);

/* ------------------------------------------------------------------ */
/* Experiment runner.                                                  */
/* ------------------------------------------------------------------ */

/* Run one experiment command end to end, writing metrics.json, CSVs,
 * checkpoints, and run_manifest.json into the config's out_dir. Commands:
 * train, eval, rollout, sweep-zeroshot, sweep-noise, kernel, export, bench,
 * repro-table1. */
HW_API hw_status hw_run(const hw_config* cfg, const char* command);

/* ------------------------------------------------------------------ */
/* Models.                                                             */
/* ------------------------------------------------------------------ */

typedef struct hw_model hw_model;

/* Train one model. kind: fhrr | hrr | mlp-s | mlp-m | mlp-l. holdout_ratio
 * in [0, 1) selects the zero-shot split; grid, dimension, epochs, and
 * optimizer settings come from cfg. */
HW_API hw_status hw_model_train(const hw_config* cfg, const char* kind,
                                double holdout_ratio, uint64_t seed, hw_model** out);

/* Load a checkpoint written by hw_model_save (format auto-detected). */
HW_API hw_status hw_model_load(const hw_config* cfg, const char* path, hw_model** out);

/* Write the model (and its JSON sidecar) to path. Round-trips bit-exactly. */
HW_API hw_status hw_model_save(const hw_config* cfg, const hw_model* model,
                               const char* path);

/* One-step prediction: decode the predicted next state for (s, a). Optional
 * out_cosine receives the cosine similarity between the prediction and the
 * true next state's embedding. */
HW_API hw_status hw_model_predict(const hw_model* model, int s, int a,
                                  int* out_decoded, double* out_cosine);

/* Monte-Carlo rollout accuracy over `trials` random trajectories of length
 * `horizon`. cleanup_period 0 disables cleanup. Trials are drawn from
 * streams derived from (seed, horizon, trial), so different models evaluated
 * at the same seed see identical trajectories. */
HW_API hw_status hw_model_rollout(const hw_model* model, uint64_t horizon,
                                  uint64_t cleanup_period, uint64_t trials,
                                  uint64_t seed, double* out_final_accuracy);

/* Copy the model kind ("fhrr", "mlp-m", ...) into buf (NUL-terminated). */
HW_API hw_status hw_model_kind(const hw_model* model, char* buf, size_t buf_len);

/* Number of learnable scalars; 0 for NULL. */
HW_API uint64_t hw_model_parameter_count(const hw_model* model);

HW_API void hw_model_free(hw_model* model);

/* ------------------------------------------------------------------ */
/* Environment.                                                        */
/* ------------------------------------------------------------------ */

/* One bounded-grid transition. State index = row * cols + col; actions are
 * 0 = up, 1 = down, 2 = left, 3 = right; moves off the edge stay in place. */
HW_API hw_status hw_grid_step(int rows, int cols, int s, int a, int* out_s_next);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* HOLOWORLD_H */
