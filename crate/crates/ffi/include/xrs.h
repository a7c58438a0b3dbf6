#ifndef XRS_H
#define XRS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum XrsStatus {
  XRS_STATUS_OK = 0,
  XRS_STATUS_NULL_POINTER = 1,
  XRS_STATUS_INVALID_ARGUMENT = 2,
  XRS_STATUS_INVALID_PARAMS = 3,
  XRS_STATUS_MALFORMED = 4,
  XRS_STATUS_DECRYPTION_FAILED = 5,
  XRS_STATUS_BUFFER_TOO_SMALL = 6,
  XRS_STATUS_MESSAGE_TOO_LONG = 7,
  XRS_STATUS_INTERNAL = 8,
} XrsStatus;

/**
 * Opaque private key.
 */
typedef struct XrsPrivateKey XrsPrivateKey;

/**
 * Opaque public key.
 */
typedef struct XrsPublicKey XrsPublicKey;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *xrs_status_message(enum XrsStatus status);

/**
 * Generates a key pair for a named preset (`toy`, `micro`, `type1`,
 * `type2`) from a 64-bit seed.
 *
 * # Safety
 * `preset` must be a NUL-terminated string; the output pointers must be
 * valid for writes.
 */
enum XrsStatus xrs_keygen_preset(const char *preset,
                                 uint64_t seed,
                                 struct XrsPublicKey **out_public,
                                 struct XrsPrivateKey **out_private);

/**
 * Generates a key pair for explicit parameters.
 *
 * # Safety
 * The output pointers must be valid for writes.
 */
enum XrsStatus xrs_keygen(uint32_t q,
                          size_t m,
                          size_t lambda,
                          size_t n,
                          size_t k,
                          size_t t,
                          uint64_t seed,
                          struct XrsPublicKey **out_public,
                          struct XrsPrivateKey **out_private);

/**
 * # Safety
 * `key` must come from this library and not have been freed already.
 */
void xrs_public_key_free(struct XrsPublicKey *key);

/**
 * # Safety
 * `key` must come from this library and not have been freed already.
 */
void xrs_private_key_free(struct XrsPrivateKey *key);

/**
 * Size of the stored redundancy part in bits, or 0 for a null key.
 *
 * # Safety
 * `key` must be null or a live handle.
 */
uint64_t xrs_public_key_bits(const struct XrsPublicKey *key);

/**
 * Longest message accepted by [`xrs_encrypt`], or 0 for a null key.
 *
 * # Safety
 * `key` must be null or a live handle.
 */
size_t xrs_max_message_bytes(const struct XrsPublicKey *key);

/**
 * # Safety
 * `key` must be a live handle; `buf` must be valid for `capacity` bytes or
 * null; `out_len` must be valid for writes.
 */
enum XrsStatus xrs_public_key_to_text(const struct XrsPublicKey *key,
                                      char *buf,
                                      size_t capacity,
                                      size_t *out_len);

/**
 * # Safety
 * `key` must be a live handle; `buf` must be valid for `capacity` bytes or
 * null; `out_len` must be valid for writes.
 */
enum XrsStatus xrs_private_key_to_text(const struct XrsPrivateKey *key,
                                       char *buf,
                                       size_t capacity,
                                       size_t *out_len);

/**
 * # Safety
 * `text` must be NUL-terminated; `out` must be valid for writes.
 */
enum XrsStatus xrs_public_key_from_text(const char *text, struct XrsPublicKey **out);

/**
 * # Safety
 * `text` must be NUL-terminated; `out` must be valid for writes.
 */
enum XrsStatus xrs_private_key_from_text(const char *text, struct XrsPrivateKey **out);

/**
 * Encrypts `msg` and writes the ciphertext in its text form.
 *
 * # Safety
 * `key` must be a live handle; `msg` must be valid for `msg_len` bytes
 * (or null when `msg_len` is 0); `buf` must be valid for `capacity` bytes
 * or null; `out_len` must be valid for writes.
 */
enum XrsStatus xrs_encrypt(const struct XrsPublicKey *key,
                           const uint8_t *msg,
                           size_t msg_len,
                           char *buf,
                           size_t capacity,
                           size_t *out_len);

/**
 * Decrypts a ciphertext in text form and writes the message bytes.
 *
 * # Safety
 * `key` must be a live handle; `ciphertext` must be NUL-terminated; `buf`
 * must be valid for `capacity` bytes or null; `out_len` must be valid for
 * writes.
 */
enum XrsStatus xrs_decrypt(const struct XrsPrivateKey *key,
                           const char *ciphertext,
                           uint8_t *buf,
                           size_t capacity,
                           size_t *out_len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* XRS_H */
