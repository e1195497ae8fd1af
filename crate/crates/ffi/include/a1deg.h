#ifndef A1DEG_H
#define A1DEG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Input and precondition errors match the CLI exit codes.
 */
typedef enum A1degStatus {
  A1DEG_STATUS_OK = 0,
  A1DEG_STATUS_NULL_POINTER = 1,
  A1DEG_STATUS_INPUT_ERROR = 2,
  A1DEG_STATUS_PRECONDITION_FAILED = 3,
  A1DEG_STATUS_CANCELLED = 4,
  A1DEG_STATUS_INTERNAL = 5,
} A1degStatus;

/**
 * A cooperative cancellation flag shared with running computations.
 */
typedef struct A1degCancel A1degCancel;

/**
 * An element of the Grothendieck–Witt ring.
 */
typedef struct A1degGw A1degGw;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread; empty after a
 * success. Valid until the next call on the same thread.
 */
const char *a1deg_last_error(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void a1deg_string_free(char *s);

struct A1degCancel *a1deg_cancel_new(void);

/**
 * Requests cancellation; safe to call from another thread.
 *
 * # Safety
 * `c` must be null or a live handle from [`a1deg_cancel_new`].
 */
void a1deg_cancel_trigger(const struct A1degCancel *c);

/**
 * # Safety
 * `c` must be null or a live handle from [`a1deg_cancel_new`].
 */
void a1deg_cancel_free(struct A1degCancel *c);

/**
 * # Safety
 * `g` must be null or a live handle.
 */
void a1deg_gw_free(struct A1degGw *g);

/**
 * Parses `"<a> + 2<b> + H"` over the field `"q"`, `"r"`, `"c"` or `"fp:<p>"`.
 *
 * # Safety
 * String arguments must be null or NUL-terminated; `out` must be writable.
 */
enum A1degStatus a1deg_gw_parse(const char *field_spec, const char *element, struct A1degGw **out);

/**
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum A1degStatus a1deg_gw_add(const struct A1degGw *a,
                              const struct A1degGw *b,
                              struct A1degGw **out);

/**
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum A1degStatus a1deg_gw_mul(const struct A1degGw *a,
                              const struct A1degGw *b,
                              struct A1degGw **out);

/**
 * Writes 1 to `out` if the classes are equal, 0 otherwise.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum A1degStatus a1deg_gw_eq(const struct A1degGw *a, const struct A1degGw *b, int32_t *out);

/**
 * # Safety
 * `g` must be a live handle.
 */
uintptr_t a1deg_gw_rank(const struct A1degGw *g);

/**
 * Writes the signature and returns 1 over Q and the real reading; returns
 * 0 and leaves `out` untouched elsewhere.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
int32_t a1deg_gw_signature(const struct A1degGw *g, int64_t *out);

/**
 * Pretty form such as `"⟨1⟩ + ⟨−1⟩"` (UTF-8). Free with [`a1deg_string_free`].
 *
 * # Safety
 * `g` must be null or a live handle.
 */
char *a1deg_gw_to_string(const struct A1degGw *g);

/**
 * JSON invariants `{"rank", "disc", "signature"?, "hasse"?, "diagonal"}`.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
char *a1deg_gw_to_json(const struct A1degGw *g);

/**
 * EKL class of `system` (components separated by `;`) at a rational point
 * given as comma separated coordinates.
 *
 * # Safety
 * String arguments must be NUL-terminated; `cancel` may be null; `out`
 * must be writable.
 */
enum A1degStatus a1deg_ekl(const char *field_spec,
                           const char *vars,
                           const char *system_text,
                           const char *point_text,
                           const struct A1degCancel *cancel,
                           struct A1degGw **out);

/**
 * Scheja–Storch class of a system with finitely many zeros.
 *
 * # Safety
 * As for [`a1deg_ekl`].
 */
enum A1degStatus a1deg_global_degree(const char *field_spec,
                                     const char *vars,
                                     const char *system_text,
                                     const struct A1degCancel *cancel,
                                     struct A1degGw **out);

/**
 * A¹-Milnor number of `poly` at the origin.
 *
 * # Safety
 * As for [`a1deg_ekl`].
 */
enum A1degStatus a1deg_milnor(const char *field_spec,
                              const char *vars,
                              const char *poly,
                              const struct A1degCancel *cancel,
                              struct A1degGw **out);

/**
 * Trace form `Tr⟨a⟩` of `k[var]/(modulus)`.
 *
 * # Safety
 * As for [`a1deg_ekl`].
 */
enum A1degStatus a1deg_trace_form(const char *field_spec,
                                  const char *var,
                                  const char *modulus,
                                  const char *element,
                                  struct A1degGw **out);

/**
 * Enriched count of lines meeting four lines given as JSON
 * `[{"span": [[..], [..]]}, ...]`.
 *
 * # Safety
 * As for [`a1deg_ekl`].
 */
enum A1degStatus a1deg_four_lines(const char *field_spec,
                                  const char *lines_json,
                                  const struct A1degCancel *cancel,
                                  struct A1degGw **out);

/**
 * Enriched count of lines on the smooth cubic surface `poly` in `x0..x3`.
 *
 * # Safety
 * As for [`a1deg_ekl`].
 */
enum A1degStatus a1deg_cubic_lines(const char *field_spec,
                                   const char *poly,
                                   const struct A1degCancel *cancel,
                                   struct A1degGw **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* A1DEG_H */
