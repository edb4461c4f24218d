/* C interface of the fcring fusion ring analyzer. */

#ifndef FCRING_H
#define FCRING_H

/* Generated by cbindgen from crates/fcring-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible call.
typedef enum FcrStatus {
  FCR_STATUS_OK = 0,
  FCR_STATUS_NULL_ARGUMENT = 1,
  FCR_STATUS_INVALID_UTF8 = 2,
  FCR_STATUS_PARSE_ERROR = 3,
  FCR_STATUS_VALIDATION_ERROR = 4,
  FCR_STATUS_OUT_OF_RANGE = 5,
  // A structural invariant failed; details via fcr_last_error.
  FCR_STATUS_INTERNAL_ERROR = 6,
  FCR_STATUS_BUFFER_TOO_SMALL = 7,
  // The operation needs data the model does not carry (e.g. weights).
  FCR_STATUS_MISSING_DATA = 8,
  FCR_STATUS_PANIC = 9,
} FcrStatus;

// Opaque analyzer handle: a validated ring plus its lattice of
// fusion-closed sets.
typedef struct FcrRing FcrRing;

// Locality profile of one fusion-closed set, flattened for C consumers.
// Tri-state fields use 1 = yes, 0 = no, -1 = not applicable.
typedef struct FcrProfile {
  uint32_t size;
  uint32_t dual_index;
  double dual_extent;
  int32_t is_local;
  int32_t is_twister;
  // Index of the Ramond class, or -1.
  int64_t ramond_class;
  int32_t is_nilpotent;
  int32_t is_integral;
  // 1 when all four character-ring checks pass or are vacuous.
  int32_t properties_ok;
} FcrProfile;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses and validates a model from JSON text and builds its lattice.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer. On
// success `*out` owns the handle and must be released with
// [`fcr_ring_free`].
enum FcrStatus fcr_ring_from_json(const char *json,
                                  double tolerance,
                                  uint64_t seed,
                                  struct FcrRing **out);

// Loads one of the bundled models by name.
//
// # Safety
// `name` must be a NUL-terminated string and `out` a valid pointer.
enum FcrStatus fcr_ring_bundled(const char *name,
                                double tolerance,
                                uint64_t seed,
                                struct FcrRing **out);

// Releases a handle. Passing NULL is a no-op.
//
// # Safety
// `ring` must be a pointer previously returned by a constructor and not
// yet freed.
void fcr_ring_free(struct FcrRing *ring);

// Number of primaries, or 0 for NULL.
//
// # Safety
// `ring` must be a live handle or NULL.
uint32_t fcr_ring_primary_count(const struct FcrRing *ring);

// Quantum dimension of one primary.
//
// # Safety
// `ring` must be a live handle; `out` a valid pointer.
enum FcrStatus fcr_ring_dim(const struct FcrRing *ring, uint32_t p, double *out);

// Sum of all squared quantum dimensions, or NaN for NULL.
//
// # Safety
// `ring` must be a live handle or NULL.
double fcr_ring_total_dim_sq(const struct FcrRing *ring);

// Whether the ring admits a symmetric unitary diagonalizer (1/0), or -1
// for NULL.
//
// # Safety
// `ring` must be a live handle or NULL.
int32_t fcr_ring_modular_compatible(const struct FcrRing *ring);

// Number of fusion-closed sets, or 0 for NULL.
//
// # Safety
// `ring` must be a live handle or NULL.
uint32_t fcr_ring_fcset_count(const struct FcrRing *ring);

// Copies the member indices of one fusion-closed set into `buf`.
// `*written` receives the member count; when it exceeds `cap` the status
// is BufferTooSmall and nothing is copied.
//
// # Safety
// `ring` must be a live handle; `buf` must point to at least `cap`
// elements; `written` must be valid.
enum FcrStatus fcr_fcset_members(const struct FcrRing *ring,
                                 uint32_t index,
                                 uint32_t *buf,
                                 size_t cap,
                                 size_t *written);

// Fills the locality profile of one fusion-closed set.
//
// # Safety
// `ring` must be a live handle; `out` a valid pointer.
enum FcrStatus fcr_fcset_profile(const struct FcrRing *ring,
                                 uint32_t index,
                                 struct FcrProfile *out);

// Runs the character-ring checks over every integral fusion-closed set.
// Ok when none fails.
//
// # Safety
// `ring` must be a live handle.
enum FcrStatus fcr_ring_verify(const struct FcrRing *ring);

// Copies the last error message for this thread into `buf` (always
// NUL-terminated) and returns the full message length in bytes.
//
// # Safety
// `buf` must point to at least `cap` writable bytes, or be NULL with
// `cap` 0 to query the length.
size_t fcr_last_error(char *buf, size_t cap);

// Static version string of the underlying library.
const char *fcr_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FCRING_H */
