#ifndef PERMOD_H
#define PERMOD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PermodSearchMode {
  PERMOD_SEARCH_MODE_FACTORS = 0,
  PERMOD_SEARCH_MODE_DIVISORS = 1,
  PERMOD_SEARCH_MODE_MULTIPLES = 2,
} PermodSearchMode;

/**
 * Result of every fallible call.
 */
typedef enum PermodStatus {
  PERMOD_STATUS_OK = 0,
  /**
   * A proven bound or internal invariant failed.
   */
  PERMOD_STATUS_INVARIANT_VIOLATION = 1,
  PERMOD_STATUS_INVALID_ARGUMENT = 2,
  PERMOD_STATUS_PARSE = 3,
  /**
   * Input is well formed but a precondition of the operation fails.
   */
  PERMOD_STATUS_PRECONDITION = 4,
  PERMOD_STATUS_NULL_POINTER = 5,
  PERMOD_STATUS_IO = 6,
  PERMOD_STATUS_PANIC = 7,
} PermodStatus;

/**
 * A coefficient field: GF(q) or Q.
 */
typedef struct PermodField PermodField;

/**
 * A permutation group on {0, ..., n-1}.
 */
typedef struct PermodGroup PermodGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next failing call on the same thread.
 */
const char *permod_last_error(void);

/**
 * Library version as a static string.
 */
const char *permod_version(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be NULL or a string returned by this library, freed once.
 */
void permod_string_free(char *s);

/**
 * Parses a field spec: `p`, `q`, `p^k` or `Q`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string; `out` must be writable.
 */
enum PermodStatus permod_field_new(const char *spec, struct PermodField **out);

/**
 * Field order, or 0 for Q.
 *
 * # Safety
 * `field` must be NULL or a live handle.
 */
uint64_t permod_field_order(const struct PermodField *field);

/**
 * # Safety
 * `field` must be NULL or a handle from [`permod_field_new`], freed once.
 */
void permod_field_free(struct PermodField *field);

/**
 * Parses a group in the text format: the degree on the first line, then
 * one generator per line as the list of images.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum PermodStatus permod_group_parse(const char *text, struct PermodGroup **out);

/**
 * Number of points, or 0 for NULL.
 *
 * # Safety
 * `group` must be NULL or a live handle.
 */
uintptr_t permod_group_degree(const struct PermodGroup *group);

/**
 * # Safety
 * `group` must be a live handle; `out` must be writable.
 */
enum PermodStatus permod_group_order(const struct PermodGroup *group, uint64_t *out);

/**
 * # Safety
 * `group` must be a live handle; `out` must be writable.
 */
enum PermodStatus permod_group_is_primitive(const struct PermodGroup *group, bool *out);

/**
 * # Safety
 * `group` must be NULL or a handle from [`permod_group_parse`], freed once.
 */
void permod_group_free(struct PermodGroup *group);

/**
 * Evaluates both inequalities for the comma-separated `vector` and writes
 * the report as JSON. A broken bound is reported in the JSON, not as a
 * status.
 *
 * # Safety
 * Handles must be live, `vector` NUL-terminated and `out_json` writable.
 */
enum PermodStatus permod_verify(const struct PermodGroup *group,
                                const struct PermodField *field,
                                const char *vector,
                                char **out_json);

/**
 * The gcd criterion for `poly` (ascending coefficients) in GF(q)[Z_p].
 *
 * # Safety
 * `field` must be live, `poly` NUL-terminated and `out_json` writable.
 */
enum PermodStatus permod_criterion(uint64_t p,
                                   const struct PermodField *field,
                                   const char *poly,
                                   char **out_json);

/**
 * Checks every minor of size at most `max_minor` (0 for all) of the
 * p x p Fourier matrix over Q(zeta_p). A vanishing minor yields
 * `PERMOD_STATUS_INVARIANT_VIOLATION` with the report still written.
 *
 * # Safety
 * `out_json` must be writable.
 */
enum PermodStatus permod_chebotarev(uint64_t p,
                                    uintptr_t max_minor,
                                    uintptr_t jobs,
                                    char **out_json);

/**
 * Minimal fields GF(q), q <= `q_max`, with t(f) + d(f) <= p, for each of
 * the `len` primes.
 *
 * # Safety
 * `primes` must point to `len` values; `out_json` must be writable.
 */
enum PermodStatus permod_table(const uint64_t *primes,
                               uintptr_t len,
                               uint64_t q_max,
                               enum PermodSearchMode mode,
                               char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PERMOD_H */
