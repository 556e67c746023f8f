/* C interface to the stirlab exact-combinatorics toolkit.
 * Generated by the build script — do not edit by hand. */

#ifndef STIRLAB_H
#define STIRLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call in this interface.
typedef enum StirlabStatus {
  // The call succeeded and every `out` parameter is filled in.
  StirlabStatus_Ok = 0,
  // The arguments are outside the mathematical domain of the operation.
  StirlabStatus_DomainError = 1,
  // The computation would enumerate more objects than its cap allows.
  StirlabStatus_BoundExceeded = 2,
  // A library invariant broke (or a panic was caught); this is a bug.
  StirlabStatus_InternalError = 3,
  // A required pointer argument was NULL.
  StirlabStatus_NullPointer = 4,
  // A string argument was not valid UTF-8.
  StirlabStatus_InvalidUtf8 = 5,
} StirlabStatus;

// Opaque handle to an exact rational number.
typedef struct StirlabRational StirlabRational;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static string.  Do not free.
const char *stirlab_version(void);

// Description of the most recent failure on this thread, or NULL if no
// call has failed yet.  The pointer stays valid until the next failing
// call on the same thread.  Do not free.
const char *stirlab_last_error_message(void);

// Release a string returned through an `out` parameter.
//
// # Safety
// `s` must be NULL or a string obtained from this library, freed at most
// once.
void stirlab_string_free(char *s);

// Parse an exact rational from text such as `"4"`, `"-7/3"`, or `"9/32"`.
//
// # Safety
// `text` must be a valid NUL-terminated string and `out` a valid pointer.
enum StirlabStatus stirlab_rational_parse(const char *text, struct StirlabRational **out);

// Wrap an integer as a rational handle.
//
// # Safety
// `out` must be a valid pointer.
enum StirlabStatus stirlab_rational_from_int(int64_t value, struct StirlabRational **out);

// Render a rational handle as text (`"65"`, `"9/32"`).
//
// # Safety
// `value` must be a live handle and `out` a valid pointer.  Free the
// result with [`stirlab_string_free`].
enum StirlabStatus stirlab_rational_to_string(const struct StirlabRational *value, char **out);

// Approximate a rational handle as a double.
//
// # Safety
// `value` must be a live handle and `out` a valid pointer.
enum StirlabStatus stirlab_rational_to_double(const struct StirlabRational *value, double *out);

// Release a rational handle.
//
// # Safety
// `value` must be NULL or a handle obtained from this library, freed at
// most once.
void stirlab_rational_free(struct StirlabRational *value);

// Compute the partition count `S(n, d)` as a decimal string.
//
// `method` selects the route by its wire name — `"oracle"`,
// `"recurrence"`, `"euler"`, `"record"`, `"record-dp"`, or `"duality"` —
// and NULL runs `"record-dp"`, the route that scales best.
//
// # Safety
// `method` must be NULL or a valid NUL-terminated string; `out` must be a
// valid pointer.  Free the result with [`stirlab_string_free`].
enum StirlabStatus stirlab_stirling(uint32_t n, uint32_t d, const char *method, char **out);

// Exact probability that `n` throws cover all `d` boxes when each box is
// hit with probability `1/x` (alternating-sum route).
//
// # Safety
// `x` must be a live handle and `out` a valid pointer.  Free the result
// with [`stirlab_rational_free`].
enum StirlabStatus stirlab_coverage_probability(uint32_t n,
                                                uint32_t d,
                                                const struct StirlabRational *x,
                                                struct StirlabRational **out);

// Exact coverage probability via the record-route tuple sum — a genuinely
// independent second route, useful for cross-checking.
//
// # Safety
// Same contract as [`stirlab_coverage_probability`].
enum StirlabStatus stirlab_coverage_probability_record(uint32_t n,
                                                       uint32_t d,
                                                       const struct StirlabRational *x,
                                                       struct StirlabRational **out);

// The normalized alternating difference `g(x) / x^n` at an exact point.
//
// # Safety
// Same contract as [`stirlab_coverage_probability`].
enum StirlabStatus stirlab_kappa(uint32_t d,
                                 uint32_t n,
                                 const struct StirlabRational *x,
                                 struct StirlabRational **out);

// The normalized tuple sum `f(x) / x^n` at an exact point; equal to
// [`stirlab_kappa`] everywhere both are defined.
//
// # Safety
// Same contract as [`stirlab_coverage_probability`].
enum StirlabStatus stirlab_rho(uint32_t d,
                               uint32_t n,
                               const struct StirlabRational *x,
                               struct StirlabRational **out);

// Monte Carlo estimate of the coverage probability.  The outcome is a
// pure function of `(n, d, x, trials, seed)` — thread count never changes
// it.  `out_hits` may be NULL if only the estimate is wanted.
//
// # Safety
// `x` must be a live handle; `out_estimate` must be valid; `out_hits`
// must be NULL or valid.
enum StirlabStatus stirlab_simulate(uint32_t n,
                                    uint32_t d,
                                    const struct StirlabRational *x,
                                    uint64_t trials,
                                    uint64_t seed,
                                    double *out_estimate,
                                    uint64_t *out_hits);

// Run the full identity suite over a grid and return the verify document
// as JSON (the same document the command-line tool prints).  The status
// reports whether the suite *ran*; read `results.all_pass` inside the
// document for the verdict.
//
// # Safety
// `out` must be a valid pointer.  Free the result with
// [`stirlab_string_free`].
enum StirlabStatus stirlab_verify_json(uint32_t n_max, uint64_t trials, uint64_t seed, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STIRLAB_H */
