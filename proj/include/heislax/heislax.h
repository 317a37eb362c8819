/* C interface to the heislax library. Opaque handles, status codes, and
 * heap strings released with heislax_string_free. Matrices are row-major. */
#ifndef HEISLAX_H
#define HEISLAX_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define HEISLAX_API __declspec(dllexport)
#else
#define HEISLAX_API __attribute__((visibility("default")))
#endif

typedef enum heislax_status {
  HEISLAX_OK = 0,
  HEISLAX_INVALID_ARGUMENT = 1,
  HEISLAX_DEGENERATE_METRIC = 2,
  HEISLAX_NOT_A_DERIVATION = 3,
  HEISLAX_DIVERGENCE = 4,
  HEISLAX_INTERNAL = 5
} heislax_status;

typedef enum heislax_method { HEISLAX_EXACT = 0, HEISLAX_RK4 = 1 } heislax_method;

typedef enum heislax_extension {
  HEISLAX_EXT_DEFAULT = 0,
  HEISLAX_EXT_TRIVIAL = 1,
  HEISLAX_EXT_CROSS_TERM = 2
} heislax_extension;

typedef struct heislax_algebra heislax_algebra;
typedef struct heislax_trajectory heislax_trajectory;

typedef struct heislax_certify_options {
  int samples;
  uint64_t seed;
  double commutation_tol;
  double poisson_tol;
  double rank_threshold;
  heislax_extension extension;
} heislax_certify_options;

typedef struct heislax_verify_options {
  uint64_t seed;
  int samples;
  double horizon;
  double dt;
  double perturb;
} heislax_verify_options;

/* Message of the last failure on the calling thread ("" if none). */
HEISLAX_API const char* heislax_last_error(void);
HEISLAX_API void heislax_string_free(char* s);

HEISLAX_API void heislax_certify_options_default(heislax_certify_options* opts);
HEISLAX_API void heislax_verify_options_default(heislax_verify_options* opts);

/* Algebra construction. `a` holds (2n)^2 entries. */
HEISLAX_API heislax_status heislax_from_symmetric(int n, const double* a, heislax_algebra** out);
HEISLAX_API heislax_status heislax_oscillator(int n, heislax_algebra** out);
/* Any document accepted by the library's algebra reader. */
HEISLAX_API heislax_status heislax_from_json(const char* json, heislax_algebra** out);
HEISLAX_API void heislax_algebra_free(heislax_algebra* g);

HEISLAX_API int heislax_algebra_n(const heislax_algebra* g);
HEISLAX_API int heislax_algebra_dim(const heislax_algebra* g);
HEISLAX_API heislax_status heislax_algebra_to_json(const heislax_algebra* g, char** out);
HEISLAX_API heislax_status heislax_defects(const heislax_algebra* g, double* jacobi, double* ad_invariance);
/* Single-constant fault injection; returns a new algebra. */
HEISLAX_API heislax_status heislax_perturb(const heislax_algebra* g, double delta, heislax_algebra** out);

/* Orbit point as a flat array (x_1..x_n, y_1..y_n, x_{n+1}) of length 2n+1.
 * Accepts {"xv", "xnp1"} or a flat array. */
HEISLAX_API heislax_status heislax_parse_point(const char* json, double* out, size_t len);

HEISLAX_API heislax_status heislax_integrate(const heislax_algebra* g, const double* x0, double T, double dt,
                                             heislax_method method, heislax_trajectory** out);
HEISLAX_API void heislax_trajectory_free(heislax_trajectory* t);
HEISLAX_API size_t heislax_trajectory_length(const heislax_trajectory* t);
/* Copies sample k into `state` (length 2n+1) and its time into `time`. */
HEISLAX_API heislax_status heislax_trajectory_state(const heislax_trajectory* t, size_t k, double* time,
                                                    double* state);
HEISLAX_API heislax_status heislax_trajectory_csv(const heislax_algebra* g, const heislax_trajectory* t, char** out);
/* max |H(t) - H(0)| with H = 1/2 (A x_v, x_v), and trace-power drift of L. */
HEISLAX_API heislax_status heislax_trajectory_drifts(const heislax_algebra* g, const heislax_trajectory* t,
                                                     double* energy_drift, double* isospectral_drift);

HEISLAX_API heislax_status heislax_verify(const heislax_algebra* g, const heislax_verify_options* opts,
                                          int* all_pass, char** report_json);
HEISLAX_API heislax_status heislax_certify(const heislax_algebra* g, const heislax_certify_options* opts,
                                           int* integrable, char** certificate_json);
/* Symmetric inputs of equal size 2n x 2n. */
HEISLAX_API heislax_status heislax_involution(int n, const double* ai, const double* aj, double tol,
                                              int* in_involution, double* defect);
/* Parses a symmetric-map document ({"n","A"} or bare matrix); *n set, `a`
 * receives (2n)^2 entries when capacity allows. */
HEISLAX_API heislax_status heislax_parse_symmetric(const char* json, int* n, double* a, size_t capacity);

#ifdef __cplusplus
}
#endif

#endif
