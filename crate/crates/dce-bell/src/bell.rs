//! Orientation-optimized Bell-CHSH value from the pseudospin correlators.
//!
//! With the measurement ansatz φ_a = φ_a' = φ_b = φ_b' = 0, θ_a = 0,
//! θ_a' = π/2, θ_b = −θ_b', the Bell operator reduces to
//! 2(cos θb Πx⊗Πx + sin θb Πz⊗Πz) and the maximum over θb is
//! B = 2√(xx² + zz²), attained at θb* = atan2(zz, xx).

use crate::circuit::{derive_mode_pair, CircuitParams};
use crate::error::{Error, Result};
use crate::gaussian::{apply_loss_minus, output_covariance, symplectic_eigenvalues};
use crate::pseudospin::{correlator_xx, correlator_zz};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Warning {
    /// f > 0.2 or ε > 1: outside the trusted perturbative window.
    PerturbativeValidity,
    /// Smallest symplectic eigenvalue below 1: the perturbative map does
    /// not produce an exactly physical covariance matrix.
    UnphysicalCm,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BellOutcome {
    pub xx: f64,
    pub zz: f64,
    /// Optimal analyzer angle θb* (rad), in [0, π/2] for the DCE pipeline.
    pub theta_b_opt: f64,
    pub b_value: f64,
    /// Strict inequality b_value > 2; threshold handling lives in the
    /// sweep engine.
    pub violates: bool,
    pub warnings: Vec<Warning>,
}

/// B = 2√(xx² + zz²) with θb* = atan2(zz, xx).
pub fn bell_from_correlators(xx: f64, zz: f64) -> Result<BellOutcome> {
    if xx.is_nan() || zz.is_nan() {
        return Err(Error::domain("NaN correlator input"));
    }
    let b_value = 2.0 * xx.hypot(zz);
    Ok(BellOutcome {
        xx,
        zz,
        theta_b_opt: zz.atan2(xx),
        b_value,
        violates: b_value > 2.0,
        warnings: Vec::new(),
    })
}

/// Lossless pipeline: params → mode pair → output covariance → correlators
/// → optimized Bell value.
pub fn bell_for_params(params: &CircuitParams) -> Result<BellOutcome> {
    bell_with_loss(params, 1.0)
}

/// Pipeline with the pure-loss channel of efficiency η on the minus mode.
/// η = 1 reduces exactly to the lossless case.
pub fn bell_with_loss(params: &CircuitParams, eta: f64) -> Result<BellOutcome> {
    let pair = derive_mode_pair(params)?;
    let state = apply_loss_minus(&output_covariance(&pair), eta)?;
    let xx = correlator_xx(&state)?;
    let zz = correlator_zz(&state)?;
    let mut outcome = bell_from_correlators(xx, zz)?;
    if pair.perturbative_warning {
        outcome.warnings.push(Warning::PerturbativeValidity);
    }
    if !symplectic_eigenvalues(&state).physical {
        outcome.warnings.push(Warning::UnphysicalCm);
    }
    Ok(outcome)
}

/// Direct evaluation of the closed-form B_max in terms of (f, n₋, n₊);
/// identity-check oracle for the composed pipeline.
pub fn bell_closed_form(f: f64, n_minus: f64, n_plus: f64) -> f64 {
    let g = (f * f - 1.0).powi(2) * (2.0 * n_minus + 1.0) * (2.0 * n_plus + 1.0);
    let arg = 4.0 * f * f * (n_minus + n_plus + 1.0).powi(2) / g;
    let xx = std::f64::consts::FRAC_2_PI * arg.atan();
    2.0 * (1.0 / (g * g) + xx * xx).sqrt()
}

/// Direct evaluation of the closed-form B^L_max with
/// A₁ = 4f²η(n₋+n₊+1)², A₂ = n'm' − r'²; identity-check oracle for the
/// lossy pipeline.
pub fn bell_loss_closed_form(f: f64, n_minus: f64, n_plus: f64, eta: f64) -> f64 {
    let f2 = f * f;
    let a1 = 4.0 * f2 * eta * (n_minus + n_plus + 1.0).powi(2);
    let a2 = -a1
        + (2.0 * f2 * n_minus + f2 + 2.0 * n_plus + 1.0)
            * (f2 * eta + 2.0 * f2 * eta * n_plus + 2.0 * eta * n_minus + 1.0);
    2.0 * ((4.0 / std::f64::consts::PI.powi(2)) * (a1 / a2).atan().powi(2) + 1.0 / (a2 * a2))
        .sqrt()
}
