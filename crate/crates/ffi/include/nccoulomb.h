#ifndef NCCOULOMB_H
#define NCCOULOMB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Zero is success.
 */
typedef enum {
  NC_STATUS_OK = 0,
  NC_STATUS_NULL_POINTER = 1,
  NC_STATUS_INVALID_ARGUMENT = 2,
  NC_STATUS_POLE = 3,
  NC_STATUS_DIVERGENCE = 4,
  NC_STATUS_REGIME_MISMATCH = 5,
  NC_STATUS_NON_FINITE = 6,
  NC_STATUS_NO_ROOT = 7,
  NC_STATUS_BREAKDOWN = 8,
  NC_STATUS_BUFFER_TOO_SMALL = 9,
  NC_STATUS_PANIC = 10,
} NcStatus;

/**
 * Opaque parameter set: NC length `lambda` and Coulomb strength `alpha`
 * (`alpha > 0` attractive), in units `hbar = m = 1`.
 */
typedef struct NcParams NcParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * New parameter handle, or NULL (with the last error set) when
 * `lambda <= 0` or either value is not finite. Free with `nc_params_free`.
 */
NcParams *nc_params_new(double lambda, double alpha);

/**
 * Releases a handle from `nc_params_new`. NULL is ignored.
 *
 * # Safety
 * `params` must be NULL or a live handle that is not used afterwards.
 */
void nc_params_free(NcParams *params);

/**
 * Bound-state energy with principal number `n > j`: below zero for
 * `alpha > 0`, above `2/lambda^2` for `alpha < 0`.
 *
 * # Safety
 * `params` must be a live handle and `energy` writable.
 */
NcStatus nc_bound_energy(const NcParams *params, uint32_t j, uint32_t n, double *energy);

/**
 * Partial-wave S-matrix at energy `energy_re + i energy_im`, with the phase
 * shift `Im ln S / 2`. Any of the outputs may be NULL.
 *
 * # Safety
 * `params` must be a live handle; non-NULL outputs must be writable.
 */
NcStatus nc_smatrix(const NcParams *params,
                    uint32_t j,
                    double energy_re,
                    double energy_im,
                    double *s_re,
                    double *s_im,
                    double *phase_shift);

/**
 * Closed-form radial sequence `R_j(0..=n_max)` at real `energy`;
 * `sign` selects the `+` (nonnegative) or `-` (negative) branch of the
 * closed form. Buffers need `n_max + 1` entries; `im` may be NULL.
 *
 * # Safety
 * `params` must be a live handle; `re` (and `im` if non-NULL) must hold
 * `len` doubles.
 */
NcStatus nc_radial_closed_form(const NcParams *params,
                               uint32_t j,
                               double energy,
                               int32_t sign,
                               uintptr_t n_max,
                               double *re,
                               double *im,
                               uintptr_t len);

/**
 * Bound-state radial sequence `R(0..=n_max)` for principal number `n > j`,
 * normalized to `R(0) = 1`. The values are real.
 *
 * # Safety
 * `params` must be a live handle and `out` must hold `len` doubles.
 */
NcStatus nc_bound_wavefunction(const NcParams *params,
                               uint32_t j,
                               uint32_t n,
                               uintptr_t n_max,
                               double *out,
                               uintptr_t len);

/**
 * Copies the calling thread's last error message (NUL-terminated, truncated
 * to fit) into `buf` and returns the full length including the NUL; 0 when
 * there is no error. Pass NULL/0 to query the length.
 *
 * # Safety
 * `buf` must be NULL or hold `len` bytes.
 */
uintptr_t nc_last_error_message(char *buf, uintptr_t len);

/**
 * Library version as a static NUL-terminated string.
 */
const char *nc_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NCCOULOMB_H */
