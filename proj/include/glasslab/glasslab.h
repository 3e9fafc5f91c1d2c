/* C interface to the spin-glass spectral laboratory.
 *
 * All functions return a glasslab_status; out-parameters are written only on
 * GLASSLAB_OK. A human-readable message for the most recent failure on the
 * calling thread is available via glasslab_last_error(). Handles are opaque
 * and must be released with their matching destroy/free function.
 */

#ifndef GLASSLAB_GLASSLAB_H
#define GLASSLAB_GLASSLAB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum glasslab_status {
  GLASSLAB_OK = 0,
  GLASSLAB_ERR_INVALID_ARGUMENT = 1, /* bad parameter or domain violation */
  GLASSLAB_ERR_CONFIG = 2,           /* malformed or inconsistent config JSON */
  GLASSLAB_ERR_BUDGET = 3,           /* tensor would exceed the memory budget */
  GLASSLAB_ERR_IO = 4,               /* filesystem failure */
  GLASSLAB_ERR_INTERNAL = 5
} glasslab_status;

/* Opaque mixture handle: the coefficient sequence defining xi(z). */
typedef struct glasslab_mixture glasslab_mixture;

/* Message describing the last failure on this thread; never NULL. */
const char* glasslab_last_error(void);

const char* glasslab_version(void);

/* Releases a string returned through a char** out-parameter. */
void glasslab_string_free(char* s);

/* ---- mixture ----------------------------------------------------------- */

/* Parses {"gammas": {"2": 1.0, ...}} into a mixture handle. */
glasslab_status glasslab_mixture_parse(const char* json,
                                       glasslab_mixture** out);
void glasslab_mixture_destroy(glasslab_mixture* m);

/* xi(z), xi'(z), xi''(z); order in {0,1,2}, |z| <= 1. */
glasslab_status glasslab_mixture_xi(const glasslab_mixture* m, double z,
                                    int order, double* out);

/* Integral of sqrt(xi'') over [0,1]; quad_points >= 16 (64 is the default). */
glasslab_status glasslab_mixture_descent_target(const glasslab_mixture* m,
                                                int quad_points, double* out);

/* Concavity verdict for xi''(q)^{-1/2} on a grid in (0,1].
 * is_concave receives 0 or 1; worst_violation the most negative slack. */
glasslab_status glasslab_mixture_full_rsb(const glasslab_mixture* m,
                                          int grid_size, int* is_concave,
                                          double* worst_violation);

/* Mixture facts (xi values, descent target, concavity) as a JSON string. */
glasslab_status glasslab_mixture_info_json(const char* mixture_json,
                                           char** out_json);

/* ---- experiments ------------------------------------------------------- */

/* Runs one experiment ("spectrum", "moments", "edge", "descent",
 * "universality", "concentration") from a config JSON document.
 *
 *   out_dir        NULL or "" to skip writing report.json and artifacts
 *   seed_override  >= 0 replaces the config seed; pass -1 to keep it
 *   tolerances_ok  receives 1 when every declared check passed, else 0
 *   report_json    optional; receives the report document
 *                  (glasslab_string_free)
 */
glasslab_status glasslab_run(const char* experiment, const char* config_json,
                             const char* out_dir, int64_t seed_override,
                             int* tolerances_ok, char** report_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GLASSLAB_GLASSLAB_H */
