#ifndef DIMALG_H
#define DIMALG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DimalgStatus {
  DIMALG_STATUS_OK = 0,
  /**
   * Addition or subtraction across different dimensions.
   */
  DIMALG_STATUS_DIMENSION_MISMATCH = 1,
  /**
   * Conversion to a unit of another dimension.
   */
  DIMALG_STATUS_INCOMPATIBLE = 2,
  DIMALG_STATUS_PARSE_ERROR = 3,
  DIMALG_STATUS_UNKNOWN_UNIT = 4,
  DIMALG_STATUS_DIVISION_BY_ZERO = 5,
  DIMALG_STATUS_INVALID_REGISTRY = 6,
  /**
   * Malformed structure or Poisson description.
   */
  DIMALG_STATUS_INVALID_INPUT = 7,
  /**
   * The input loaded but at least one law failed; the report is still set.
   */
  DIMALG_STATUS_LAW_FAILED = 8,
  DIMALG_STATUS_NULL_ARGUMENT = 9,
  DIMALG_STATUS_INVALID_UTF8 = 10,
  /**
   * A panic was caught at the boundary.
   */
  DIMALG_STATUS_INTERNAL = 11,
} DimalgStatus;

/**
 * An exact quantity together with the unit it is displayed in.
 */
typedef struct DimalgQuantity DimalgQuantity;

/**
 * A unit registry: base dimensions and unit symbols with exact factors.
 */
typedef struct DimalgRegistry DimalgRegistry;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or null. Valid until
 * the next call into the library on the same thread.
 */
const char *dimalg_last_error(void);

/**
 * A static description of a status code.
 */
const char *dimalg_status_message(enum DimalgStatus status);

const char *dimalg_version(void);

/**
 * # Safety
 * `s` is null or a string returned by this library, not yet freed.
 */
void dimalg_string_free(char *s);

/**
 * The bundled registry: length and time with `m, cm, L, s, min`.
 */
struct DimalgRegistry *dimalg_registry_si(void);

/**
 * # Safety
 * `json` is a nul-terminated string; `out` is writable.
 */
enum DimalgStatus dimalg_registry_from_json(const char *json, struct DimalgRegistry **out);

/**
 * # Safety
 * `r` is null or a registry from this library, not yet freed.
 */
void dimalg_registry_free(struct DimalgRegistry *r);

/**
 * Number of base dimensions, or 0 for a null registry.
 *
 * # Safety
 * `r` is null or a live registry.
 */
size_t dimalg_registry_rank(const struct DimalgRegistry *r);

/**
 * Evaluates an expression such as `"2.2 L/min + 2.1 L/min"`.
 *
 * # Safety
 * `r` is a live registry, `expr` a nul-terminated string, `out` writable.
 */
enum DimalgStatus dimalg_eval(const struct DimalgRegistry *r,
                              const char *expr,
                              struct DimalgQuantity **out);

/**
 * A new quantity equal to `q`, displayed in `unit`.
 *
 * # Safety
 * `r` and `q` are live handles, `unit` a nul-terminated string, `out` writable.
 */
enum DimalgStatus dimalg_convert(const struct DimalgRegistry *r,
                                 const struct DimalgQuantity *q,
                                 const char *unit,
                                 struct DimalgQuantity **out);

/**
 * Renders `q` as the CLI does: `digits` significant digits, or the exact
 * fraction when `digits` is 0. Free the result with `dimalg_string_free`.
 *
 * # Safety
 * `r` and `q` are live handles and `out` is writable.
 */
enum DimalgStatus dimalg_quantity_format(const struct DimalgRegistry *r,
                                         const struct DimalgQuantity *q,
                                         uint32_t digits,
                                         char **out);

/**
 * The display value as the nearest double.
 *
 * # Safety
 * `r` and `q` are live handles and `out` is writable.
 */
enum DimalgStatus dimalg_quantity_value(const struct DimalgRegistry *r,
                                        const struct DimalgQuantity *q,
                                        double *out);

/**
 * Copies the exponent vector of `q` into `buf` (up to `len` entries) and
 * stores its full length in `count`.
 *
 * # Safety
 * `q` is a live quantity, `buf` has room for `len` values (or is null when
 * `len` is 0), and `count` is writable.
 */
enum DimalgStatus dimalg_quantity_exponents(const struct DimalgQuantity *q,
                                            int64_t *buf,
                                            size_t len,
                                            size_t *count);

/**
 * # Safety
 * `q` is null or a quantity from this library, not yet freed.
 */
void dimalg_quantity_free(struct DimalgQuantity *q);

/**
 * Runs the ring axiom suite on a structure description. On `OK` or
 * `LAW_FAILED`, `report` receives the law-by-law report as JSON.
 *
 * # Safety
 * `json` is a nul-terminated string and `report` is writable.
 */
enum DimalgStatus dimalg_check_structure(const char *json, char **report);

/**
 * `{f, g}` in the Poisson algebra described by `json`, as text.
 *
 * # Safety
 * All strings are nul-terminated and `out` is writable.
 */
enum DimalgStatus dimalg_poisson_bracket(const char *json,
                                         const char *f,
                                         const char *g,
                                         char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIMALG_H */
