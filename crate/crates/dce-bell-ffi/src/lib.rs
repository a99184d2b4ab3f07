//! C ABI surface for the Bell-CHSH pipeline: opaque parameter handles,
//! plain-data result structs and integer status codes. The header is
//! generated into `include/dce_bell.h` at build time.

use dce_bell::circuit::derive_mode_pair;
use dce_bell::sweep::{violation_threshold, AxisParam};
use dce_bell::{bell_with_loss, CircuitParams, Error, Warning};
use std::os::raw::c_char;

/// Status codes returned by every fallible entry point.
#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DceStatus {
    Ok = 0,
    /// A parameter violated its domain (negative frequency, eta outside
    /// [0, 1], detuning at or above half the drive, ...).
    InvalidArgument = 1,
    /// Numerical failure (no sign change in a threshold bracket, ...).
    NumericalError = 2,
    NullPointer = 3,
}

/// Warning bits in `DceBellOutcome::warnings`.
pub const DCE_WARN_PERTURBATIVE_VALIDITY: u32 = 1;
pub const DCE_WARN_UNPHYSICAL_CM: u32 = 2;

/// Opaque handle to a validated parameter set.
pub struct DceParams {
    inner: CircuitParams,
}

/// Derived per-mode quantities.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct DceModePair {
    pub omega_plus: f64,
    pub omega_minus: f64,
    pub n_plus: f64,
    pub n_minus: f64,
    pub f: f64,
}

/// Correlators and optimized Bell value.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct DceBellOutcome {
    pub xx: f64,
    pub zz: f64,
    pub theta_b_opt: f64,
    pub b_value: f64,
    /// 1 when b_value > 2, else 0.
    pub violates: i32,
    /// Bitmask of DCE_WARN_* flags.
    pub warnings: u32,
}

/// Sweepable parameter for threshold finding.
#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DceAxis {
    Epsilon = 0,
    Temperature = 1,
    DeltaOmegaFrac = 2,
    Eta = 3,
}

fn status_for(err: &Error) -> DceStatus {
    match err {
        Error::Domain(_) | Error::Config(_) => DceStatus::InvalidArgument,
        _ => DceStatus::NumericalError,
    }
}

fn outcome_to_c(o: &dce_bell::BellOutcome) -> DceBellOutcome {
    let mut warnings = 0u32;
    for w in &o.warnings {
        warnings |= match w {
            Warning::PerturbativeValidity => DCE_WARN_PERTURBATIVE_VALIDITY,
            Warning::UnphysicalCm => DCE_WARN_UNPHYSICAL_CM,
        };
    }
    DceBellOutcome {
        xx: o.xx,
        zz: o.zz,
        theta_b_opt: o.theta_b_opt,
        b_value: o.b_value,
        violates: o.violates as i32,
        warnings,
    }
}

/// Create a parameter handle. All quantities in SI: rad/s, m/s, m, K.
/// Returns a status; on success `*out` owns the handle and must be
/// released with `dce_params_free`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dce_params_new(
    omega_d_rads: f64,
    epsilon: f64,
    delta_omega_rads: f64,
    v_m_per_s: f64,
    l0_eff_m: f64,
    temperature_k: f64,
    out: *mut *mut DceParams,
) -> DceStatus {
    if out.is_null() {
        return DceStatus::NullPointer;
    }
    let params = CircuitParams {
        omega_d: omega_d_rads,
        epsilon,
        delta_omega: delta_omega_rads,
        v: v_m_per_s,
        l0_eff: l0_eff_m,
        temperature: temperature_k,
    };
    if let Err(e) = params.validate() {
        let _ = e;
        return DceStatus::InvalidArgument;
    }
    *out = Box::into_raw(Box::new(DceParams { inner: params }));
    DceStatus::Ok
}

/// Release a handle created by `dce_params_new`. Null is a no-op.
///
/// # Safety
/// `params` must be null or a pointer returned by `dce_params_new` that
/// has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn dce_params_free(params: *mut DceParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// Derived mode-pair quantities (frequencies, occupations, driving f).
///
/// # Safety
/// `params` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dce_mode_pair(
    params: *const DceParams,
    out: *mut DceModePair,
) -> DceStatus {
    if params.is_null() || out.is_null() {
        return DceStatus::NullPointer;
    }
    match derive_mode_pair(&(*params).inner) {
        Ok(p) => {
            *out = DceModePair {
                omega_plus: p.omega_plus,
                omega_minus: p.omega_minus,
                n_plus: p.n_plus,
                n_minus: p.n_minus,
                f: p.f,
            };
            DceStatus::Ok
        }
        Err(e) => status_for(&e),
    }
}

/// Lossless Bell pipeline.
///
/// # Safety
/// `params` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dce_bell_evaluate(
    params: *const DceParams,
    out: *mut DceBellOutcome,
) -> DceStatus {
    dce_bell_evaluate_with_loss(params, 1.0, out)
}

/// Bell pipeline with a pure-loss channel of transmission `eta` on the
/// minus mode.
///
/// # Safety
/// `params` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dce_bell_evaluate_with_loss(
    params: *const DceParams,
    eta: f64,
    out: *mut DceBellOutcome,
) -> DceStatus {
    if params.is_null() || out.is_null() {
        return DceStatus::NullPointer;
    }
    match bell_with_loss(&(*params).inner, eta) {
        Ok(o) => {
            *out = outcome_to_c(&o);
            DceStatus::Ok
        }
        Err(e) => status_for(&e),
    }
}

/// Bisect for the axis value where b = 2 inside [lo, hi]. Temperature is
/// in kelvin, detuning as the fraction of the drive frequency. `eta` < 0
/// means no loss channel.
///
/// # Safety
/// `params` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dce_violation_threshold(
    params: *const DceParams,
    axis: DceAxis,
    eta: f64,
    lo: f64,
    hi: f64,
    out: *mut f64,
) -> DceStatus {
    if params.is_null() || out.is_null() {
        return DceStatus::NullPointer;
    }
    let axis = match axis {
        DceAxis::Epsilon => AxisParam::Epsilon,
        DceAxis::Temperature => AxisParam::Temperature,
        DceAxis::DeltaOmegaFrac => AxisParam::DeltaOmegaFrac,
        DceAxis::Eta => AxisParam::Eta,
    };
    let loss = if eta < 0.0 { None } else { Some(eta) };
    match violation_threshold(&(*params).inner, loss, axis, (lo, hi)) {
        Ok(x) => {
            *out = x;
            DceStatus::Ok
        }
        Err(e) => status_for(&e),
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn dce_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
