#ifndef KSFORMS_H
#define KSFORMS_H

#pragma once

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes shared by every entry point.
 */
typedef enum KsfStatus {
  KSF_STATUS_OK = 0,
  /**
   * At least one check failed; the report was still produced.
   */
  KSF_STATUS_CHECKS_FAILED = 1,
  KSF_STATUS_NULL_POINTER = 2,
  KSF_STATUS_INVALID_UTF8 = 3,
  KSF_STATUS_INVALID_JSON = 4,
  /**
   * Invalid configuration: signature, degree, spinor cap, unknown name.
   */
  KSF_STATUS_USAGE = 5,
  KSF_STATUS_SIGNATURE = 6,
  KSF_STATUS_DOMAIN = 7,
  KSF_STATUS_DEGREE = 8,
  KSF_STATUS_ARITHMETIC = 9,
  KSF_STATUS_INTERNAL = 10,
} KsfStatus;

/**
 * Opaque handle to a Clifford module representation.
 */
typedef struct KsfRep KsfRep;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds the representation for signature `(n_plus, n_minus)` and `eps`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum KsfStatus ksf_rep_new(size_t n_plus, size_t n_minus, int8_t eps, struct KsfRep **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `rep` must come from [`ksf_rep_new`] and not be used afterwards.
 */
void ksf_rep_free(struct KsfRep *rep);

/**
 * Complex dimension of the spinor module.
 *
 * # Safety
 * `rep` must be a live handle and `out` writable.
 */
enum KsfStatus ksf_rep_spinor_dim(const struct KsfRep *rep, size_t *out);

/**
 * Dimension `n + 1` of the ambient space.
 *
 * # Safety
 * `rep` must be a live handle and `out` writable.
 */
enum KsfStatus ksf_rep_ambient_dim(const struct KsfRep *rep, size_t *out);

/**
 * Runs the suites described by a JSON configuration; missing fields take
 * their defaults. Writes the JSON report to `out_json`. Returns
 * `KSF_STATUS_CHECKS_FAILED` when the report contains failures.
 *
 * # Safety
 * `config_json` must be a NUL terminated string, `out_json` writable.
 */
enum KsfStatus ksf_verify(const char *config_json, char **out_json);

/**
 * Dimension table rows for a JSON configuration, as a JSON array.
 *
 * # Safety
 * `config_json` must be a NUL terminated string, `out_json` writable.
 */
enum KsfStatus ksf_dimensions(const char *config_json, char **out_json);

/**
 * Anchor and formula of a check key or record name.
 *
 * # Safety
 * `name` must be a NUL terminated string, `out_text` writable.
 */
enum KsfStatus ksf_explain(const char *name, char **out_text);

/**
 * Releases a string produced by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void ksf_string_free(char *s);

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next call into the library on the same thread.
 */
const char *ksf_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KSFORMS_H */
