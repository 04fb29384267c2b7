#ifndef TORSION_FORGE_H
#define TORSION_FORGE_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum TfStatus {
  TF_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  TF_STATUS_NULL_POINTER = 1,
  /**
   * Malformed text, JSON or UTF-8.
   */
  TF_STATUS_PARSE = 2,
  /**
   * Invalid (n, d, m) or other argument values.
   */
  TF_STATUS_INVALID_INPUT = 3,
  /**
   * The request is outside what the constructors or oracle support.
   */
  TF_STATUS_PRECONDITION = 4,
  TF_STATUS_SEARCH_EXHAUSTED = 5,
  /**
   * The certificate did not verify.
   */
  TF_STATUS_VERIFY_FAILED = 6,
  /**
   * The oracle found no order within the bound.
   */
  TF_STATUS_NOT_FOUND = 7,
  TF_STATUS_INTERNAL = 8,
  TF_STATUS_PANIC = 9,
} TfStatus;

/**
 * Opaque certificate handle.
 */
typedef struct TfCertificate TfCertificate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Writes the verdict for `(n, d, m)` as a JSON string to `*out_json`.
 *
 * # Safety
 * `out_json` must be a valid pointer to writable storage.
 */
enum TfStatus tf_verdict(uint64_t n, uint64_t d, uint64_t m, char **out_json);

/**
 * Builds a curve with a point of order `m` using the family the verdict
 * engine selects. The search limit comes from `TORSION_FORGE_SEARCH_LIMIT`
 * or the default.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage.
 */
enum TfStatus tf_construct(uint64_t n, uint64_t d, uint64_t m, struct TfCertificate **out);

/**
 * Builds a certificate from a JSON construction request such as
 * `{"n":5,"d":2,"style":"n-plus-ed","e":1}`.
 *
 * # Safety
 * `request_json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TfStatus tf_construct_request(const char *request_json, struct TfCertificate **out);

/**
 * Parses a certificate. Parsing does not verify it.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TfStatus tf_certificate_from_json(const char *json, struct TfCertificate **out);

/**
 * Serializes a certificate to JSON.
 *
 * # Safety
 * `cert` must be a live handle and `out_json` a valid pointer.
 */
enum TfStatus tf_certificate_to_json(const struct TfCertificate *cert, char **out_json);

/**
 * Returns `TF_STATUS_OK` if the certificate verifies and
 * `TF_STATUS_VERIFY_FAILED` otherwise, with the failed check in the last
 * error message.
 *
 * # Safety
 * `cert` must be a live handle.
 */
enum TfStatus tf_certificate_verify(const struct TfCertificate *cert);

/**
 * Writes the claimed order `m` of the certificate's point.
 *
 * # Safety
 * `cert` must be a live handle and `out_m` a valid pointer.
 */
enum TfStatus tf_certificate_order(const struct TfCertificate *cert, uint64_t *out_m);

/**
 * Computes the order of the point with divisor arithmetic (d = 2 only),
 * trying multiples up to `bound`. Returns `TF_STATUS_NOT_FOUND` when no
 * multiple up to `bound` is the identity.
 *
 * # Safety
 * `cert` must be a live handle and `out_order` a valid pointer.
 */
enum TfStatus tf_certificate_oracle_order(const struct TfCertificate *cert,
                                          uint64_t bound,
                                          uint64_t *out_order);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `cert` must be null or a handle not yet freed.
 */
void tf_certificate_free(struct TfCertificate *cert);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void tf_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library on the same thread.
 */
const char *tf_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TORSION_FORGE_H */
