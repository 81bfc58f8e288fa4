#ifndef BRIESKORN_H
#define BRIESKORN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum BkStatus {
  BK_STATUS_OK = 0,
  BK_STATUS_NULL_POINTER = 1,
  BK_STATUS_INVALID_UTF8 = 2,
  BK_STATUS_PARSE = 3,
  BK_STATUS_INVALID_ARGUMENT = 4,
  BK_STATUS_COMPUTATION = 5,
  BK_STATUS_PANIC = 6,
} BkStatus;

/**
 * Zeta function flavour for [`bk_zeta_json`].
 */
typedef enum BkZetaKind {
  BK_ZETA_KIND_MODIFIED = 0,
  BK_ZETA_KIND_PLAIN = 1,
} BkZetaKind;

/**
 * Opaque polynomial handle.
 */
typedef struct BkPoly BkPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *bk_last_error(void);

/**
 * Parses `text` into a new handle stored in `*out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum BkStatus bk_poly_parse(const char *text, struct BkPoly **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `p` must come from [`bk_poly_parse`] and not be used afterwards.
 */
void bk_poly_free(struct BkPoly *p);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void bk_string_free(char *s);

/**
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum BkStatus bk_poly_num_variables(const struct BkPoly *p, size_t *out);

/**
 * Normalized text of the polynomial.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum BkStatus bk_poly_normalized(const struct BkPoly *p, char **out);

/**
 * Decides equivalence; `*equivalent` receives 1 or 0.
 *
 * # Safety
 * `f` and `g` must be live handles and `equivalent` a valid pointer.
 */
enum BkStatus bk_classify(const struct BkPoly *f, const struct BkPoly *g, int32_t *equivalent);

/**
 * Virtual Poincaré polynomial of `f = target` (target in -1, 0, 1) as
 * text, with its value at `u = -1`. Either output may be null.
 *
 * # Safety
 * `p` must be a live handle; non-null outputs must be valid pointers.
 */
enum BkStatus bk_fiber(const struct BkPoly *p,
                       int32_t target,
                       char **beta,
                       int64_t *euler_characteristic);

/**
 * Realized zeta function as JSON. `order == 0` picks twice the largest
 * exponent.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum BkStatus bk_zeta_json(const struct BkPoly *p,
                           enum BkZetaKind kind,
                           uint32_t order,
                           char **out);

/**
 * Sign recovery from the modified zeta function, as JSON. `order == 0`
 * picks twice the largest exponent.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum BkStatus bk_recover_json(const struct BkPoly *p, uint32_t order, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BRIESKORN_H */
