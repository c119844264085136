#ifndef BWSIM_BWSIM_H_
#define BWSIM_BWSIM_H_

/*
 * C interface to the bwsim library: configuration handles, planning and
 * frame analysis, Monte Carlo runs, and a few pure physics functions.
 *
 * Every fallible call returns a bwsim_status. On failure a description is
 * available from bwsim_last_error() on the same thread until the next call.
 * Strings returned through char** are allocated by the library and must be
 * released with bwsim_string_free().
 */

#include <stddef.h>
#include <stdint.h>

#if defined(BWSIM_BUILDING_LIBRARY)
#define BWSIM_API __attribute__((visibility("default")))
#else
#define BWSIM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bwsim_status {
  BWSIM_OK = 0,
  BWSIM_ERR_ARGUMENT = 1,   /* null pointer or invalid argument */
  BWSIM_ERR_PARSE = 2,      /* malformed or inconsistent configuration */
  BWSIM_ERR_INFEASIBLE = 3, /* timing constraints cannot be met */
  BWSIM_ERR_RUNTIME = 4,    /* model or simulation failure */
  BWSIM_ERR_IO = 5,         /* file could not be read or written */
  BWSIM_ERR_DOMAIN = 6      /* value outside a relation's domain, e.g. |v| >= c */
} bwsim_status;

typedef enum bwsim_model { BWSIM_MODEL_QM = 0, BWSIM_MODEL_BWAVE = 1 } bwsim_model;

typedef enum bwsim_interval {
  BWSIM_TIMELIKE = 0,
  BWSIM_SPACELIKE = 1,
  BWSIM_LIGHTLIKE = 2
} bwsim_interval;

/* Outcome order used by all count arrays: TT, TR, RT, RR (arm 1 first). */
enum { BWSIM_TT = 0, BWSIM_TR = 1, BWSIM_RT = 2, BWSIM_RR = 3 };

typedef struct bwsim_config bwsim_config;
typedef struct bwsim_summary bwsim_summary;

BWSIM_API const char* bwsim_version(void);
BWSIM_API const char* bwsim_last_error(void);
BWSIM_API const char* bwsim_status_name(bwsim_status status);
BWSIM_API void bwsim_string_free(char* s);

/* ---- configuration ---------------------------------------------------- */

BWSIM_API bwsim_status bwsim_config_load(const char* path, bwsim_config** out);
BWSIM_API bwsim_status bwsim_config_parse(const char* text, bwsim_config** out);
BWSIM_API bwsim_status bwsim_config_clone(const bwsim_config* cfg, bwsim_config** out);
BWSIM_API void bwsim_config_free(bwsim_config* cfg);
/* Canonical text form; re-parses to an identical configuration. */
BWSIM_API bwsim_status bwsim_config_dump(const bwsim_config* cfg, char** out_text);
BWSIM_API bwsim_status bwsim_config_equal(const bwsim_config* a, const bwsim_config* b, int* out_equal);
BWSIM_API bwsim_status bwsim_config_digest(const bwsim_config* cfg, uint64_t* out);

BWSIM_API bwsim_status bwsim_config_set_model(bwsim_config* cfg, bwsim_model model);
BWSIM_API bwsim_status bwsim_config_set_trials(bwsim_config* cfg, uint64_t trials);
BWSIM_API bwsim_status bwsim_config_set_seed(bwsim_config* cfg, uint64_t seed);
/* 0 selects the hardware concurrency; 1 runs serially. */
BWSIM_API bwsim_status bwsim_config_set_threads(bwsim_config* cfg, unsigned threads);
BWSIM_API bwsim_status bwsim_config_get_trials(const bwsim_config* cfg, uint64_t* out);
BWSIM_API bwsim_status bwsim_config_get_seed(const bwsim_config* cfg, uint64_t* out);

/* Parses "<number> <unit>" (e.g. "20 ns") into seconds. */
BWSIM_API bwsim_status bwsim_parse_time(const char* text, double* out_seconds);

/* ---- plan ------------------------------------------------------------- */

typedef struct bwsim_arm_plan {
  int arm;
  double delta_t;
  double t_f;
  double q;
  double y_lower;
  double y_upper;
  int feasible;
  double max_cell_detector_distance;
  int has_detour;
  double y;
  int y_in_window;
  int oracle_samples;
  int oracle_passes;
  int oracle_disagreements;
} bwsim_arm_plan;

/*
 * Plans each arm carrying a periodic cell. q < 0 uses the configured discard
 * fraction, or 1 when unset. Fills up to `capacity` entries of `plans` and
 * stores the number of arms in *out_count. Text and CSV reports are optional
 * (pass NULL to skip). Returns BWSIM_ERR_INFEASIBLE when any arm's window is
 * empty or its configured detour lies outside it; outputs are still filled.
 */
BWSIM_API bwsim_status bwsim_plan(const bwsim_config* cfg, double q, bwsim_arm_plan* plans, size_t capacity,
                                  size_t* out_count, char** out_text, char** out_csv);

/* ---- frames ----------------------------------------------------------- */

typedef struct bwsim_frames_result {
  double t_detect;
  double t_change_own;
  double t_change_far;
  double own_threshold_c; /* fraction of c */
  int own_frame_exists;
  double far_threshold_c;
  int far_frame_exists;
  bwsim_interval own_pair;
  bwsim_interval far_pair;
} bwsim_frames_result;

/* Null time pointers take their value from the configured timeline. */
BWSIM_API bwsim_status bwsim_frames(const bwsim_config* cfg, const double* t_detect, const double* t_change_own,
                                    const double* t_change_far, bwsim_frames_result* out, char** out_text,
                                    char** out_csv);

/* ---- simulation ------------------------------------------------------- */

BWSIM_API bwsim_status bwsim_run(const bwsim_config* cfg, bwsim_summary** out);
BWSIM_API void bwsim_summary_free(bwsim_summary* s);
BWSIM_API bwsim_status bwsim_summary_counts(const bwsim_summary* s, uint64_t counts[4], uint64_t* kept,
                                            uint64_t* discarded);
BWSIM_API bwsim_status bwsim_summary_probability(const bwsim_summary* s, int outcome, double* p, double* stderr_out);
BWSIM_API bwsim_status bwsim_summary_text(const bwsim_summary* s, char** out);
BWSIM_API bwsim_status bwsim_summary_csv(const bwsim_summary* s, char** out);

/* Runs the configured trial count at each theta in [theta_min, theta_max]. */
BWSIM_API bwsim_status bwsim_scan(const bwsim_config* cfg, double theta_min, double theta_max, int steps,
                                  char** out_csv);

/* angles: a, a', b, b' in radians. */
BWSIM_API bwsim_status bwsim_chsh(const bwsim_config* cfg, const double angles[4], double* out_S,
                                  double* out_S_error, char** out_text, char** out_csv);

/* ---- physics ---------------------------------------------------------- */

BWSIM_API double bwsim_speed_of_light(void);
BWSIM_API bwsim_status bwsim_boost(double t, double x, double v, double* out_t, double* out_x);
BWSIM_API bwsim_interval bwsim_interval_class(double t1, double x1, double t2, double x2);
BWSIM_API bwsim_status bwsim_y_window(double delta_t, double t_f, double r_min, double r_max, double* lower,
                                      double* upper, int* nonempty);
BWSIM_API int bwsim_feasible(double delta_t, double t_f, double q);
/* Probability of `outcome` for effective analyzer angles a, b (radians). */
BWSIM_API bwsim_status bwsim_joint_prob(double a, double b, int outcome, double* out);
BWSIM_API double bwsim_appendix_p21(double theta);

#ifdef __cplusplus
}
#endif

#endif /* BWSIM_BWSIM_H_ */
