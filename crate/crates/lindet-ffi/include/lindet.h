#ifndef LINDET_H
#define LINDET_H

/* Generated from the Rust sources by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every entry point.
 */
typedef enum LdtStatus {
  /**
   * Success; for check functions, the identity held exactly.
   */
  LDT_STATUS_OK = 0,
  /**
   * The asserted identity was violated.
   */
  LDT_STATUS_IDENTITY_FAILED = 1,
  /**
   * Malformed input: bad JSON, bad literal, shape or mode mismatch.
   */
  LDT_STATUS_INVALID_INPUT = 2,
  /**
   * An enumeration cap was exceeded.
   */
  LDT_STATUS_CAP_EXCEEDED = 3,
  /**
   * A required pointer argument was null.
   */
  LDT_STATUS_NULL_ARGUMENT = 4,
  /**
   * A string argument was not valid UTF-8.
   */
  LDT_STATUS_UTF8 = 5,
  /**
   * An internal panic was caught at the boundary.
   */
  LDT_STATUS_PANIC = 6,
} LdtStatus;

/**
 * Opaque weighted digraph handle.
 */
typedef struct LdtGraph LdtGraph;

/**
 * Opaque exact matrix handle.
 */
typedef struct LdtMatrix LdtMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *ldt_version(void);

/**
 * Releases a string produced by this library.
 */
void ldt_string_free(char *s);

/**
 * Parses a digraph from JSON:
 * {"n": 2, "edges": [{"from": 0, "to": 1, "weight": "2"}]}.
 */
enum LdtStatus ldt_graph_from_json(const char *json, struct LdtGraph **out);

void ldt_graph_free(struct LdtGraph *g);

/**
 * Parses a matrix from JSON: {"rows": [["1", "2"], ["3", "4"]]}.
 */
enum LdtStatus ldt_matrix_from_json(const char *json, struct LdtMatrix **out);

void ldt_matrix_free(struct LdtMatrix *m);

/**
 * Determinant as a canonical literal string.
 */
enum LdtStatus ldt_matrix_det(const struct LdtMatrix *m, char **out);

/**
 * Permanent as a canonical literal string.
 */
enum LdtStatus ldt_matrix_per(const struct LdtMatrix *m, char **out);

/**
 * Characteristic polynomial as a JSON array of canonical literals,
 * degree n down to 0.
 */
enum LdtStatus ldt_matrix_charpoly(const struct LdtMatrix *m, char **out);

/**
 * c_r: weight sum over closed walks of length r.
 */
enum LdtStatus ldt_closed_walk_sum(const struct LdtGraph *g, size_t r, char **out);

/**
 * l_r: signed weight sum over linear subdigraphs on r vertices.
 */
enum LdtStatus ldt_linear_sub_signed_sum(const struct LdtGraph *g, size_t r, char **out);

/**
 * The Newton-Girard residual at r; "0" exactly when the identity holds.
 */
enum LdtStatus ldt_newton_residual(const struct LdtGraph *g, size_t r, char **out);

/**
 * Checks that the Newton-Girard residual at r is exactly zero.
 */
enum LdtStatus ldt_check_newton(const struct LdtGraph *g, size_t r);

/**
 * Runs the full involution certificate at r.
 */
enum LdtStatus ldt_check_involution(const struct LdtGraph *g, size_t r);

/**
 * Path-matrix identity over (sources, sinks): determinant when
 * `permanent` is false, the permanent analogue when true.
 */
enum LdtStatus ldt_check_lgv(const struct LdtGraph *g,
                             const size_t *sources,
                             size_t n_sources,
                             const size_t *sinks,
                             size_t n_sinks,
                             bool permanent);

/**
 * Verifies the symbolic Cramer identity for dimension n, column k
 * (1-based).
 */
enum LdtStatus ldt_check_cramer_identity(size_t n, size_t k);

/**
 * Solves A*x = b exactly. `rhs` is a single-column (or single-row)
 * matrix; the solution comes back as a JSON array of canonical
 * literals. Singular systems report `LDT_STATUS_INVALID_INPUT`.
 */
enum LdtStatus ldt_solve_cramer(const struct LdtMatrix *matrix,
                                const struct LdtMatrix *rhs,
                                char **out);

/**
 * Checks the alternating-sum identity over a tuple of matrix handles.
 * With `pie` the full inclusion-exclusion certificate runs on the boxes
 * digraph; otherwise both alternating sums are checked to vanish. When
 * the hypothesis N >= n+1 fails, nothing is asserted beyond the
 * certificate's bookkeeping.
 */
enum LdtStatus ldt_check_sumident(const struct LdtMatrix *const *matrices, size_t len, bool pie);

/**
 * Parses a weight literal in the input grammar (integer, fraction, or
 * variable) and echoes its canonical rendering; a cheap validity probe
 * for host languages.
 */
enum LdtStatus ldt_literal_canonical(const char *literal, bool symbolic, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LINDET_H */
