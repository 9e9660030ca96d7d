#ifndef SYMDIV_H
#define SYMDIV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

// Result codes of the C interface.
typedef enum SdStatus {
  // Success.
  SD_STATUS_OK = 0,
  // A required pointer argument was null.
  SD_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  SD_STATUS_INVALID_UTF8 = 2,
  // The operator text did not parse.
  SD_STATUS_PARSE = 3,
  // The computation rejected its input.
  SD_STATUS_MATH = 4,
  // An internal panic was caught.
  SD_STATUS_PANIC = 5,
} SdStatus;

// Opaque divergence-form operator `Σ (−1)^l ∂^l b_l ∂^l`.
typedef struct SdDivOp SdDivOp;

// Message of the last failed call on this thread, or NULL. The pointer stays
// valid until the next call into the library on the same thread.
const char *sd_last_error_message(void);

// Parses operator-file text (`b0 = x^4` lines, or raw `a0 = …` lines of a
// symmetric operator) into a new handle stored in `*out`.
//
// # Safety
// `src` must be a NUL-terminated string and `out` a valid pointer.
enum SdStatus sd_div_op_parse(const char *src, struct SdDivOp **out);

// Releases a handle. NULL is ignored.
//
// # Safety
// `op` must be NULL or a handle from this library that was not yet freed.
void sd_div_op_free(struct SdDivOp *op);

// Half-order `m` of the operator, or 0 for NULL.
//
// # Safety
// `op` must be NULL or a live handle.
uintptr_t sd_div_op_half_order(const struct SdDivOp *op);

// Writes the operator as operator-file text to `*out`; release it with
// [`sd_string_free`].
//
// # Safety
// `op` must be a live handle and `out` a valid pointer.
enum SdStatus sd_div_op_to_string(const struct SdDivOp *op, char **out);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must be NULL or a string from this library that was not yet freed.
void sd_string_free(char *s);

// Divergence coefficients `B_ℓ` of `L^n`, as a new handle.
//
// # Safety
// `op` must be a live handle and `out` a valid pointer.
enum SdStatus sd_div_op_power(const struct SdDivOp *op, uint32_t n, struct SdDivOp **out);

// The scaled family `b_l ↦ s^{2l} b_l(s x, s)`, as a new handle.
//
// # Safety
// `op` must be a live handle and `out` a valid pointer.
enum SdStatus sd_div_op_scale_hbar(const struct SdDivOp *op, struct SdDivOp **out);

// Divergence form of the quantized Weyl lift of `x^a ξ^b`, as a new handle.
//
// # Safety
// `out` must be a valid pointer.
enum SdStatus sd_quantize_weyl(uint32_t a, uint32_t b, struct SdDivOp **out);

// Smallest eigenvalue of the `dim × dim` Hermite truncation of `L_ℏ^n`.
//
// # Safety
// `op` must be a live handle and `out` a valid pointer.
enum SdStatus sd_positivity_min_eigenvalue(const struct SdDivOp *op,
                                           uint32_t n,
                                           double hbar,
                                           uintptr_t dim,
                                           double *out);

#endif  /* SYMDIV_H */
