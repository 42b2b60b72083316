#ifndef VTL_H
#define VTL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define VTL_FORM_EXPLICIT 0

#define VTL_FORM_RECURSIVE 1

#define VTL_FORM_SIMPLIFIED 2

#define VTL_GEN_IDENTITY 0

#define VTL_GEN_E 1

#define VTL_GEN_V 2

typedef enum VtlStatus {
  VTL_STATUS_OK = 0,
  VTL_STATUS_NULL_POINTER = 1,
  VTL_STATUS_INVALID_ARGUMENT = 2,
  VTL_STATUS_STRAND_MISMATCH = 3,
  VTL_STATUS_POLE = 4,
  VTL_STATUS_PARSE = 5,
  VTL_STATUS_NOT_CLASS_UNIFORM = 6,
  VTL_STATUS_INTERNAL = 7,
} VtlStatus;

/**
 * Opaque per-class coefficient table.
 */
typedef struct VtlClassTable VtlClassTable;

/**
 * Opaque element of the algebra over ℚ(d).
 */
typedef struct VtlElement VtlElement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *vtl_last_error(void);

/**
 * Projector `f_n` as a class table.
 *
 * # Safety
 * `out` must be a valid pointer to write a handle to.
 */
enum VtlStatus vtl_projector_table(uint32_t n, uint32_t form, struct VtlClassTable **out);

/**
 * Projector `f_n` as a full element.
 *
 * # Safety
 * `out` must be a valid pointer to write a handle to.
 */
enum VtlStatus vtl_projector_element(uint32_t n, uint32_t form, struct VtlElement **out);

/**
 * Planar projector `P_n`.
 *
 * # Safety
 * `out` must be a valid pointer to write a handle to.
 */
enum VtlStatus vtl_jones_wenzl(uint32_t n, struct VtlElement **out);

/**
 * Generator on `n` strands: identity, `e_i` or `v_i` (`i` is 1-based and
 * ignored for the identity).
 *
 * # Safety
 * `out` must be a valid pointer to write a handle to.
 */
enum VtlStatus vtl_generator(uint32_t n, uint32_t kind, uint32_t i, struct VtlElement **out);

/**
 * `a * b` (a stacked above b).
 *
 * # Safety
 * `a`, `b` must be live handles; `out` a valid pointer.
 */
enum VtlStatus vtl_element_mul(const struct VtlElement *a,
                               const struct VtlElement *b,
                               struct VtlElement **out);

/**
 * `a + b`.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` a valid pointer.
 */
enum VtlStatus vtl_element_add(const struct VtlElement *a,
                               const struct VtlElement *b,
                               struct VtlElement **out);

/**
 * `a - b`.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` a valid pointer.
 */
enum VtlStatus vtl_element_sub(const struct VtlElement *a,
                               const struct VtlElement *b,
                               struct VtlElement **out);

/**
 * Writes 1 to `out` when the elements are equal, 0 otherwise.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` a valid pointer.
 */
enum VtlStatus vtl_element_equal(const struct VtlElement *a,
                                 const struct VtlElement *b,
                                 int32_t *out);

/**
 * Number of stored terms and strand count.
 *
 * # Safety
 * `a` must be a live handle; `terms`, `strands` valid pointers or null.
 */
enum VtlStatus vtl_element_shape(const struct VtlElement *a, size_t *terms, uint32_t *strands);

/**
 * Markov trace as rational-function JSON `{"num": [...], "den": [...]}`,
 * coefficients listed from the constant term up.
 *
 * # Safety
 * `a` must be a live handle; `out` a valid pointer.
 */
enum VtlStatus vtl_element_trace_json(const struct VtlElement *a, char **out);

/**
 * Markov trace specialized at `d` (given as `"p"` or `"p/q"`), written as a
 * reduced rational string.
 *
 * # Safety
 * `a` must be a live handle; `d` a NUL-terminated string; `out` a valid pointer.
 */
enum VtlStatus vtl_element_trace_at(const struct VtlElement *a, const char *d, char **out);

/**
 * Element JSON `{"n", "terms": [{"partner", "coeff"}]}`.
 *
 * # Safety
 * `a` must be a live handle; `out` a valid pointer.
 */
enum VtlStatus vtl_element_to_json(const struct VtlElement *a, char **out);

/**
 * Parses element JSON.
 *
 * # Safety
 * `s` must be a NUL-terminated string; `out` a valid pointer.
 */
enum VtlStatus vtl_element_from_json(const char *s, struct VtlElement **out);

/**
 * Numeric specialization at `d` as JSON `{"n", "terms": [{"partner", "coeff": "p/q"}]}`.
 *
 * # Safety
 * `a` must be a live handle; `d` a NUL-terminated string; `out` a valid pointer.
 */
enum VtlStatus vtl_element_eval_json(const struct VtlElement *a, const char *d, char **out);

/**
 * Compresses a class-uniform element.
 *
 * # Safety
 * `a` must be a live handle; `out` a valid pointer.
 */
enum VtlStatus vtl_element_class_decompose(const struct VtlElement *a, struct VtlClassTable **out);

/**
 * Expands a class table into a full element.
 *
 * # Safety
 * `t` must be a live handle; `out` a valid pointer.
 */
enum VtlStatus vtl_table_expand(const struct VtlClassTable *t, struct VtlElement **out);

/**
 * Class table JSON `{"n", "coeffs": [{"l", "coeff"}]}`.
 *
 * # Safety
 * `t` must be a live handle; `out` a valid pointer.
 */
enum VtlStatus vtl_table_to_json(const struct VtlClassTable *t, char **out);

/**
 * Parses class table JSON.
 *
 * # Safety
 * `s` must be a NUL-terminated string; `out` a valid pointer.
 */
enum VtlStatus vtl_table_from_json(const char *s, struct VtlClassTable **out);

/**
 * One-line rendering such as `f_2 = (1/2)[2]_2 - (1/d)[0]_2`.
 *
 * # Safety
 * `t` must be a live handle; `name` a NUL-terminated string; `out` a valid pointer.
 */
enum VtlStatus vtl_table_render(const struct VtlClassTable *t, const char *name, char **out);

/**
 * Runs a verification suite and writes its report JSON; `passed` receives
 * 1 when every gating check passed.
 *
 * # Safety
 * `suite` must be a NUL-terminated string; `out` a valid pointer; `passed`
 * a valid pointer or null.
 */
enum VtlStatus vtl_verify(const char *suite,
                          uint32_t n,
                          uint64_t seed,
                          int32_t force,
                          char **out,
                          int32_t *passed);

/**
 * # Safety
 * `a` must be null or a handle not yet freed.
 */
void vtl_element_free(struct VtlElement *a);

/**
 * # Safety
 * `t` must be null or a handle not yet freed.
 */
void vtl_table_free(struct VtlClassTable *t);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void vtl_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VTL_H */
