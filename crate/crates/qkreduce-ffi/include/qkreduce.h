#ifndef QKREDUCE_H
#define QKREDUCE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum QkStatus {
  QK_STATUS_OK = 0,
  QK_STATUS_NULL_POINTER = 1,
  QK_STATUS_PARSE = 2,
  QK_STATUS_INADMISSIBLE = 3,
  QK_STATUS_SINGULAR = 4,
  QK_STATUS_BUFFER_TOO_SMALL = 5,
  QK_STATUS_INTERNAL = 6,
} QkStatus;

typedef enum QkFamily {
  QK_FAMILY_THETA = 0,
  QK_FAMILY_OMEGA = 1,
} QkFamily;

typedef enum QkLevel {
  QK_LEVEL_TWISTOR = 0,
  QK_LEVEL_SASAKIAN = 1,
} QkLevel;

/**
 * Opaque stratum catalog.
 */
typedef struct QkCatalog QkCatalog;

/**
 * Opaque weight matrix.
 */
typedef struct QkMatrix QkMatrix;

/**
 * Summary counts of a catalog.
 */
typedef struct QkCatalogSummary {
  size_t entries;
  size_t spheres;
  size_t point_candidates;
  /**
   * Feasible point entries; `usize::MAX` when no probes were run.
   */
  size_t points;
  size_t pruned;
  size_t survivors;
} QkCatalogSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread; empty if none. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *qk_last_error(void);

/**
 * Parses a literal such as `"1,0,1,1/0,1,1,1/1,1,0,1"` (Θ) or `"1,2,3/1,3,6"` (Ω).
 *
 * # Safety
 * `literal` must be a NUL-terminated string; `out` must be writable.
 */
enum QkStatus qk_matrix_parse(const char *literal, struct QkMatrix **out);

/**
 * # Safety
 * `m` must come from [`qk_matrix_parse`] and not be used afterwards.
 */
void qk_matrix_free(struct QkMatrix *m);

/**
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum QkStatus qk_matrix_family(const struct QkMatrix *m, enum QkFamily *out);

/**
 * Writes every determinant entering admissibility (4 minors + 8 boxes for
 * Θ, 3 minors + 4 sums + 4 boxes for Ω) to `values`, and whether all are
 * nonzero to `admissible`. `len` receives the count; if `cap` is too small
 * nothing is written and `BufferTooSmall` is returned.
 *
 * # Safety
 * `values` must hold `cap` entries; `len` and `admissible` must be writable.
 */
enum QkStatus qk_matrix_determinants(const struct QkMatrix *m,
                                     int64_t *values,
                                     size_t cap,
                                     size_t *len,
                                     bool *admissible);

/**
 * Order of the solution group of `B·x ∈ ℤ^n` for a square row-major `n × n`
 * integer matrix, i.e. `|det B|`.
 *
 * # Safety
 * `rows` must hold `n * n` entries; `order` must be writable.
 */
enum QkStatus qk_isotropy_order(const int64_t *rows, size_t n, uint64_t *order);

/**
 * Builds the singular-stratum catalog with probes seeded by `seed`.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum QkStatus qk_catalog_build(const struct QkMatrix *m,
                               enum QkLevel level,
                               uint64_t seed,
                               size_t restarts,
                               struct QkCatalog **out);

/**
 * # Safety
 * `c` must come from [`qk_catalog_build`] and not be used afterwards.
 */
void qk_catalog_free(struct QkCatalog *c);

/**
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum QkStatus qk_catalog_summary(const struct QkCatalog *c, struct QkCatalogSummary *out);

/**
 * Catalog as JSON; release with [`qk_string_free`].
 *
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum QkStatus qk_catalog_json(const struct QkCatalog *c, char **out);

/**
 * Structural comparison of two matrices as JSON; release with [`qk_string_free`].
 *
 * # Safety
 * `a`, `b` must be live handles and `out` writable.
 */
enum QkStatus qk_compare_json(const struct QkMatrix *a,
                              const struct QkMatrix *b,
                              uint64_t seed,
                              char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void qk_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QKREDUCE_H */
