/* C interface for the halfhopf library. */

#ifndef HALFHOPF_H
#define HALFHOPF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every FFI entry point.
 */
typedef enum HhStatus {
  HH_STATUS_OK = 0,
  HH_STATUS_NULL_POINTER = 1,
  HH_STATUS_INVALID_UTF8 = 2,
  HH_STATUS_INVALID_INPUT = 3,
  HH_STATUS_DOMAIN_ERROR = 4,
  HH_STATUS_PANIC = 5,
} HhStatus;

/**
 * Opaque handle around a circle function.
 */
typedef struct HhFunction HhFunction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent error on this thread, or NULL when the last
 * call succeeded. The pointer stays valid until the next failing call on
 * the same thread.
 */
const char *hh_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *hh_version(void);

/**
 * Parses a CircleFunction from its JSON representation.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum HhStatus hh_function_from_json(const char *json, struct HhFunction **out);

/**
 * Serializes the function back to JSON; free the result with
 * `hh_string_free`.
 *
 * # Safety
 * `f` must be a live handle from this library and `out` a valid pointer.
 */
enum HhStatus hh_function_to_json(const struct HhFunction *f, char **out);

/**
 * # Safety
 * `f` must be a handle returned by this library (or NULL, a no-op).
 */
void hh_function_free(struct HhFunction *f);

/**
 * # Safety
 * `s` must be a string returned by this library (or NULL, a no-op).
 */
void hh_string_free(char *s);

/**
 * Half Dirichlet energy E½(u) = 2π Σ|n||û(n)|².
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
enum HhStatus hh_energy_spectral(const struct HhFunction *f, double *out);

/**
 * Stationarity residual max_k |c_k| of the fractional Hopf coefficients.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
enum HhStatus hh_stationarity_residual(const struct HhFunction *f, double *out);

/**
 * max |𝓗(ũ)| over an r_res × theta_res polar grid with radii up to r_max.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
enum HhStatus hh_conformality_defect(const struct HhFunction *f,
                                     uintptr_t r_res,
                                     uintptr_t theta_res,
                                     double r_max,
                                     double *out);

/**
 * ∫ u′(−Δ)^{1/2}u sin(δ−x) dx.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
enum HhStatus hh_pohozaev_residual(const struct HhFunction *f, double delta, double *out);

/**
 * ∫ u′(−Δ)^{1/2}u dx (the rotation-field pairing).
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
enum HhStatus hh_rotation_pohozaev(const struct HhFunction *f, double *out);

/**
 * Evaluates the harmonic extension at (r, θ); writes dim pairs (re, im)
 * into `out`, which must hold at least 2·dim doubles.
 *
 * # Safety
 * `f` must be a live handle and `out` must point to 2·dim writable doubles.
 */
enum HhStatus hh_extension_eval(const struct HhFunction *f, double r, double theta, double *out);

/**
 * Number of components of the stored function.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
enum HhStatus hh_function_dim(const struct HhFunction *f, uintptr_t *out);

/**
 * Bandwidth (highest retained frequency) of the stored function.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
enum HhStatus hh_function_bandwidth(const struct HhFunction *f, uintptr_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HALFHOPF_H */
