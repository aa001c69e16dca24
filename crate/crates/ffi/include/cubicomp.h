#ifndef CUBICOMP_H
#define CUBICOMP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes for every fallible call.
 */
typedef enum CubicStatus {
  CUBIC_STATUS_OK = 0,
  CUBIC_STATUS_NULL_POINTER = 1,
  CUBIC_STATUS_PARSE_ERROR = 2,
  CUBIC_STATUS_INVALID_DISCRIMINANT = 3,
  CUBIC_STATUS_DISCRIMINANT_MISMATCH = 4,
  CUBIC_STATUS_NOT_PROJECTIVE = 5,
  CUBIC_STATUS_NOT_UNIMODULAR = 6,
  CUBIC_STATUS_UNBALANCED_PAIR = 7,
  CUBIC_STATUS_CLASS_NOT_FOUND = 8,
  CUBIC_STATUS_OVERFLOW = 9,
  CUBIC_STATUS_INTERNAL_ERROR = 10,
} CubicStatus;

/**
 * The result of composing two forms.
 */
typedef struct CubicComposition CubicComposition;

/**
 * A validated discriminant.
 */
typedef struct CubicDisc CubicDisc;

/**
 * A binary cubic form `(a0, a1, a2, a3)` in the triplicate convention.
 */
typedef struct CubicFormHandle CubicFormHandle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *cubic_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void cubic_string_free(char *s);

/**
 * Parses and validates a decimal discriminant.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum CubicStatus cubic_disc_new(const char *text, struct CubicDisc **out);

/**
 * # Safety
 * `d` must come from [`cubic_disc_new`] and not have been freed.
 */
void cubic_disc_free(struct CubicDisc *d);

/**
 * Parses `"a0,a1,a2,a3"` (triplicate convention) or `{"a":[...]}`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum CubicStatus cubic_form_parse(const char *text, struct CubicFormHandle **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum CubicStatus cubic_form_from_i64(int64_t a0,
                                     int64_t a1,
                                     int64_t a2,
                                     int64_t a3,
                                     struct CubicFormHandle **out);

/**
 * # Safety
 * `f` must come from this library and not have been freed.
 */
void cubic_form_free(struct CubicFormHandle *f);

/**
 * Writes the four coefficients, failing with `Overflow` if any exceeds 64 bits.
 *
 * # Safety
 * `f` must be a live handle; `out` must have room for 4 values.
 */
enum CubicStatus cubic_form_coefficients(const struct CubicFormHandle *f, int64_t *out);

/**
 * `"a0,a1,a2,a3"`.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum CubicStatus cubic_form_to_string(const struct CubicFormHandle *f, char **out);

/**
 * Decimal discriminant of any form.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum CubicStatus cubic_form_discriminant(const struct CubicFormHandle *f, char **out);

/**
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum CubicStatus cubic_form_is_projective(const struct CubicFormHandle *f, bool *out);

/**
 * The covariant as `"c0,c1,c2,c3"` with exact halves such as `-1/2`.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum CubicStatus cubic_form_covariant(const struct CubicFormHandle *f, char **out);

/**
 * `f(px + qy, rx + sy)`; the matrix must have determinant 1.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum CubicStatus cubic_form_act(const struct CubicFormHandle *f,
                                int64_t p,
                                int64_t q,
                                int64_t r,
                                int64_t s,
                                struct CubicFormHandle **out);

/**
 * The balanced pair of a projective form, as JSON
 * `{"ideal":{"alpha":..,"beta":..},"delta":..,"signed_norm":..}`.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum CubicStatus cubic_form_to_pair_json(const struct CubicFormHandle *f,
                                         const struct CubicDisc *disc,
                                         char **out);

/**
 * # Safety
 * `disc` must be live; `out` must be writable.
 */
enum CubicStatus cubic_identity_form(const struct CubicDisc *disc, struct CubicFormHandle **out);

/**
 * Composes two projective forms of discriminant `disc`. The result has
 * already passed symbolic verification.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum CubicStatus cubic_compose(const struct CubicDisc *disc,
                               const struct CubicFormHandle *f1,
                               const struct CubicFormHandle *f2,
                               struct CubicComposition **out);

/**
 * # Safety
 * `c` must come from [`cubic_compose`] and not have been freed.
 */
void cubic_composition_free(struct CubicComposition *c);

/**
 * A new handle holding the composite form `P`.
 *
 * # Safety
 * `c` must be live; `out` must be writable.
 */
enum CubicStatus cubic_composition_form(const struct CubicComposition *c,
                                        struct CubicFormHandle **out);

/**
 * The bilinear coefficients `m1..m4` of `X` and `n1..n4` of `Y`.
 *
 * # Safety
 * `c` must be live; `m` and `n` must each have room for 4 values.
 */
enum CubicStatus cubic_composition_bilinear(const struct CubicComposition *c,
                                            int64_t *m,
                                            int64_t *n);

/**
 * `{"P":{"a":[..]},"X":[..],"Y":[..],"verified":true}`.
 *
 * # Safety
 * `c` must be live; `out` must be writable.
 */
enum CubicStatus cubic_composition_to_json(const struct CubicComposition *c, char **out);

/**
 * Checks `P(X, Y) = p1' p2 + p1 p2'` for `X = sum m_i (..)`, `Y = sum n_i (..)`.
 *
 * # Safety
 * Handles must be live; `m`, `n` must point to 4 values; `out` must be writable.
 */
enum CubicStatus cubic_verify(const struct CubicFormHandle *f1,
                              const struct CubicFormHandle *f2,
                              const struct CubicFormHandle *p,
                              const int64_t *m,
                              const int64_t *n,
                              bool *out);

/**
 * Bounded search for `g` with `f1 . g = f2`. `depth = 0` selects the
 * default. On success `*found` is true and `witness` holds `p, q, r, s`;
 * otherwise `*found` is false, which does not prove inequivalence.
 *
 * # Safety
 * Handles must be live; `found` writable; `witness` room for 4 values.
 */
enum CubicStatus cubic_equivalent(const struct CubicFormHandle *f1,
                                  const struct CubicFormHandle *f2,
                                  uint32_t depth,
                                  bool *found,
                                  int64_t *witness);

/**
 * Enumerates classes with `|a_i| <= bound` and returns the table as
 * `{"D":..,"reps":[..],"identity":i,"table":[[..]]}`. `depth = 0` selects
 * the default search depth.
 *
 * # Safety
 * `disc` must be live; `out` must be writable.
 */
enum CubicStatus cubic_classes_json(const struct CubicDisc *disc,
                                    uint32_t bound,
                                    uint32_t depth,
                                    char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* CUBICOMP_H */
