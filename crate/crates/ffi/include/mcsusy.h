#ifndef MCSUSY_H
#define MCSUSY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Arithmetic mode: `MC_HBAR_FORMAL` keeps ħ symbolic, `MC_HBAR_ONE` sets ħ = 1.
 */
typedef enum McHbar {
  MC_HBAR_FORMAL = 0,
  MC_HBAR_ONE = 1,
} McHbar;

/**
 * Result codes. `MC_STATUS_OK` is zero; every other value is an error.
 */
typedef enum McStatus {
  MC_STATUS_OK = 0,
  MC_STATUS_NULL_POINTER = 1,
  MC_STATUS_INVALID_UTF8 = 2,
  MC_STATUS_PARSE = 3,
  MC_STATUS_CONDITION_VIOLATED = 4,
  MC_STATUS_ENVELOPE = 5,
  MC_STATUS_NOT_REAL_VALUED = 6,
  MC_STATUS_INDEX_OUT_OF_RANGE = 7,
  MC_STATUS_UNSUPPORTED = 8,
  MC_STATUS_INVALID_ARGUMENT = 9,
  MC_STATUS_INTERNAL = 10,
  MC_STATUS_PANIC = 11,
} McStatus;

/**
 * Opaque phase-space function.
 */
typedef struct McFunction McFunction;

/**
 * Opaque SUSY system built from four input functions or an example.
 */
typedef struct McSystem McSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or an empty string.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *mc_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void mc_string_free(char *s);

/**
 * Parses an expression such as `"q1*p2 - q2*p1"`.
 *
 * # Safety
 * `src` must be a NUL-terminated string; `out` must be writable.
 */
enum McStatus mc_function_parse(const char *src, struct McFunction **out);

/**
 * Releases a function handle. Null is ignored.
 *
 * # Safety
 * `f` must come from this library and not have been freed.
 */
void mc_function_free(struct McFunction *f);

/**
 * `*out = a ⋆ b`.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum McStatus mc_function_star(enum McHbar mode,
                               const struct McFunction *a,
                               const struct McFunction *b,
                               struct McFunction **out);

/**
 * `*out = a ⋆ b − b ⋆ a`.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum McStatus mc_function_bracket(enum McHbar mode,
                                  const struct McFunction *a,
                                  const struct McFunction *b,
                                  struct McFunction **out);

/**
 * `*out = {a, b}`, the Poisson bracket.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum McStatus mc_function_poisson(const struct McFunction *a,
                                  const struct McFunction *b,
                                  struct McFunction **out);

/**
 * Renders `f` in the expression grammar accepted by [`mc_function_parse`].
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum McStatus mc_function_to_string(const struct McFunction *f, char **out);

/**
 * Serializes `f` as its JSON term list.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum McStatus mc_function_to_json(const struct McFunction *f, char **out);

/**
 * `*out = 1` if `f` is exactly zero, else `0`.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum McStatus mc_function_is_zero(const struct McFunction *f, bool *out);

/**
 * Builds a system from `W1, W2, P1, P2`. Fails with
 * `MC_STATUS_CONDITION_VIOLATED` when the nilpotency conditions do not hold.
 *
 * # Safety
 * The four inputs must be live handles; `out` must be writable.
 */
enum McStatus mc_system_new(enum McHbar mode,
                            const struct McFunction *w1,
                            const struct McFunction *w2,
                            const struct McFunction *p1,
                            const struct McFunction *p2,
                            struct McSystem **out);

/**
 * Builds Example 1 or 2 (ħ = 1) with coupling `k`; null `k` means `K = 0`.
 *
 * # Safety
 * `k` must be null or a live handle; `out` must be writable.
 */
enum McStatus mc_system_example(uint8_t example, const struct McFunction *k, struct McSystem **out);

/**
 * Releases a system handle. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void mc_system_free(struct McSystem *s);

/**
 * Runs every applicable identity check. Writes the JSON report to `json`
 * and the number of failed checks to `failures`.
 *
 * # Safety
 * `s` must be a live handle; `json` and `failures` must be writable.
 */
enum McStatus mc_system_verify_json(const struct McSystem *s, char **json, uintptr_t *failures);

/**
 * Eigenvalue of the bare state `(j, n_a, n_b)` of an example with `K = 0`.
 *
 * # Safety
 * `out` must be writable.
 */
enum McStatus mc_eigenvalue(uint8_t example, uint8_t j, uint32_t n_a, uint32_t n_b, int64_t *out);

/**
 * Verifies the spectrum of an example with `K = 0` for indices up to
 * `n_max`. Writes the CSV table to `csv` and the failure count to `failures`.
 *
 * # Safety
 * `csv` and `failures` must be writable.
 */
enum McStatus mc_verify_spectrum(uint8_t example, uint32_t n_max, char **csv, uintptr_t *failures);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MCSUSY_H */
