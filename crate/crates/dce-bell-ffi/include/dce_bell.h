#ifndef DCE_BELL_H
#define DCE_BELL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Warning bits in `DceBellOutcome::warnings`.
 */
#define DCE_WARN_PERTURBATIVE_VALIDITY 1

#define DCE_WARN_UNPHYSICAL_CM 2

/**
 * Sweepable parameter for threshold finding.
 */
enum DceAxis
#ifdef __cplusplus
  : int32_t
#endif // __cplusplus
 {
  Epsilon = 0,
  Temperature = 1,
  DeltaOmegaFrac = 2,
  Eta = 3,
};
#ifndef __cplusplus
typedef int32_t DceAxis;
#endif // __cplusplus

/**
 * Status codes returned by every fallible entry point.
 */
enum DceStatus
#ifdef __cplusplus
  : int32_t
#endif // __cplusplus
 {
  Ok = 0,
  /**
   * A parameter violated its domain (negative frequency, eta outside
   * [0, 1], detuning at or above half the drive, ...).
   */
  InvalidArgument = 1,
  /**
   * Numerical failure (no sign change in a threshold bracket, ...).
   */
  NumericalError = 2,
  NullPointer = 3,
};
#ifndef __cplusplus
typedef int32_t DceStatus;
#endif // __cplusplus

/**
 * Opaque handle to a validated parameter set.
 */
typedef struct DceParams DceParams;

/**
 * Derived per-mode quantities.
 */
typedef struct DceModePair {
  double omega_plus;
  double omega_minus;
  double n_plus;
  double n_minus;
  double f;
} DceModePair;

/**
 * Correlators and optimized Bell value.
 */
typedef struct DceBellOutcome {
  double xx;
  double zz;
  double theta_b_opt;
  double b_value;
  /**
   * 1 when b_value > 2, else 0.
   */
  int32_t violates;
  /**
   * Bitmask of DCE_WARN_* flags.
   */
  uint32_t warnings;
} DceBellOutcome;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Create a parameter handle. All quantities in SI: rad/s, m/s, m, K.
 * Returns a status; on success `*out` owns the handle and must be
 * released with `dce_params_free`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
DceStatus dce_params_new(double omega_d_rads,
                         double epsilon,
                         double delta_omega_rads,
                         double v_m_per_s,
                         double l0_eff_m,
                         double temperature_k,
                         struct DceParams **out);

/**
 * Release a handle created by `dce_params_new`. Null is a no-op.
 *
 * # Safety
 * `params` must be null or a pointer returned by `dce_params_new` that
 * has not been freed yet.
 */
void dce_params_free(struct DceParams *params);

/**
 * Derived mode-pair quantities (frequencies, occupations, driving f).
 *
 * # Safety
 * `params` must be a live handle; `out` must be valid.
 */
DceStatus dce_mode_pair(const struct DceParams *params, struct DceModePair *out);

/**
 * Lossless Bell pipeline.
 *
 * # Safety
 * `params` must be a live handle; `out` must be valid.
 */
DceStatus dce_bell_evaluate(const struct DceParams *params, struct DceBellOutcome *out);

/**
 * Bell pipeline with a pure-loss channel of transmission `eta` on the
 * minus mode.
 *
 * # Safety
 * `params` must be a live handle; `out` must be valid.
 */
DceStatus dce_bell_evaluate_with_loss(const struct DceParams *params,
                                      double eta,
                                      struct DceBellOutcome *out);

/**
 * Bisect for the axis value where b = 2 inside [lo, hi]. Temperature is
 * in kelvin, detuning as the fraction of the drive frequency. `eta` < 0
 * means no loss channel.
 *
 * # Safety
 * `params` must be a live handle; `out` must be valid.
 */
DceStatus dce_violation_threshold(const struct DceParams *params,
                                  DceAxis axis,
                                  double eta,
                                  double lo,
                                  double hi,
                                  double *out);

/**
 * Library version as a static NUL-terminated string.
 */
const char *dce_version(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* DCE_BELL_H */
