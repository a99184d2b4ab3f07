//! Pseudospin correlators ⟨Πx⊗Πx⟩ and ⟨Πz⊗Πz⟩ for a standard-form state.
//!
//! The closed forms are the fast path used by the Bell pipeline:
//!   xx = (2/π) arctan(r² / (nm − r²)),   zz = 1 / (nm − r²).
//! The quadrature path re-derives both numerically and exists to catch
//! transcription errors in the closed forms.
//!
//! The sign-correlation of the q-marginal of the Wigner function itself is
//! the textbook orthant value (2/π) arcsin(r/√(nm)), which is not the same
//! function as the arctan form above. Both are exposed: the arctan form
//! drives everything downstream (it is the one the violation thresholds
//! derive from), and the arcsin variant is available as a diagnostic. Each
//! has its own independent quadrature check: the arctan form via the
//! orthant integral at the effective correlation r²/√(r⁴ + (nm − r²)²)
//! (arctan x = arcsin(x/√(1+x²))), the arcsin variant via the orthant
//! integral over the actual Wigner q-marginal.

use crate::error::{Error, Result};
use crate::gaussian::{wigner, StandardForm};
use crate::quadrature::adaptive_2d;
use serde::Serialize;

/// Default relative tolerance for oracle quadrature runs.
pub const DEFAULT_QUAD_TOL: f64 = 1e-8;

/// Calibration constants of the quadrature path, fixed once at the vacuum
/// anchor (zz = 1, xx with unit slope in the orthant correlation).
const KAPPA_X: f64 = 1.0;
const KAPPA_Z: f64 = std::f64::consts::PI * std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CorrelatorMethod {
    ClosedForm,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrelatorPair {
    pub xx: f64,
    pub zz: f64,
    pub method: CorrelatorMethod,
}

fn check_state(state: &StandardForm) -> Result<f64> {
    let d = state.det_arg();
    if d <= 0.0 {
        return Err(Error::domain(format!(
            "state not valid: nm - r^2 = {d} must be > 0"
        )));
    }
    Ok(d)
}

/// ⟨Πx⊗Πx⟩ = (2/π) arctan(r² / (nm − r²)).
pub fn correlator_xx(state: &StandardForm) -> Result<f64> {
    let d = check_state(state)?;
    Ok(std::f64::consts::FRAC_2_PI * (state.r * state.r / d).atan())
}

/// ⟨Πz⊗Πz⟩ = 1 / (nm − r²). Exceeds 1 by O(f²) on perturbatively
/// unphysical states; that is a documented property, not an error.
pub fn correlator_zz(state: &StandardForm) -> Result<f64> {
    Ok(1.0 / check_state(state)?)
}

/// Diagnostic variant: the textbook bivariate-Gaussian sign correlation
/// (2/π) arcsin(r/√(nm)) of the Wigner q-marginal.
pub fn correlator_xx_arcsin(state: &StandardForm) -> Result<f64> {
    check_state(state)?;
    Ok(std::f64::consts::FRAC_2_PI * (state.r / (state.n * state.m).sqrt()).asin())
}

/// Both closed-form correlators.
pub fn correlators(state: &StandardForm) -> Result<CorrelatorPair> {
    Ok(CorrelatorPair {
        xx: correlator_xx(state)?,
        zz: correlator_zz(state)?,
        method: CorrelatorMethod::ClosedForm,
    })
}

/// Numerically evaluate ∫ sgn(u) sgn(w) g(u, w) du dw for a normalized
/// bivariate Gaussian with correlation `rho`, by adaptive panel quadrature
/// over [−L, L]². Closed value: (2/π) arcsin(rho).
fn sign_correlation_quadrature(rho: f64, var_u: f64, var_w: f64, tol: f64) -> Result<f64> {
    if !(rho.abs() < 1.0) {
        return Err(Error::domain(format!("correlation must satisfy |rho| < 1, got {rho}")));
    }
    let su = var_u.sqrt();
    let sw = var_w.sqrt();
    let norm = 1.0 / (2.0 * std::f64::consts::PI * su * sw * (1.0 - rho * rho).sqrt());
    let q = 1.0 / (2.0 * (1.0 - rho * rho));
    let density = move |u: f64, w: f64| {
        let x = u / su;
        let y = w / sw;
        norm * (-q * (x * x - 2.0 * rho * x * y + y * y)).exp()
    };
    // 8 sigma tails: truncation error well under tol/10
    let lu = 8.0 * su;
    let lw = 8.0 * sw;
    adaptive_2d(
        &|u, w| sgn(u) * sgn(w) * density(u, w),
        -lu,
        lu,
        -lw,
        lw,
        0.25 * tol,
    )
}

fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Oracle path for `correlator_xx`: the orthant integral at the effective
/// correlation r²/√(r⁴ + (nm − r²)²), whose sign correlation equals the
/// arctan closed form.
pub fn correlator_xx_quadrature(state: &StandardForm, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tol must be > 0, got {tol}")));
    }
    let d = check_state(state)?;
    let r2 = state.r * state.r;
    let rho = r2 / (r2 * r2 + d * d).sqrt();
    // variance scale follows the state so the integration window of the
    // spec (L = 8 sqrt(max(n, m))) is honored
    let v = 0.5 * state.n.max(state.m);
    Ok(KAPPA_X * sign_correlation_quadrature(rho, v, v, tol)?)
}

/// Oracle path for the arcsin diagnostic: the orthant integral over the
/// actual p-marginalized Wigner function, covariance [[n, r], [r, m]] / 2.
pub fn correlator_xx_marginal_quadrature(state: &StandardForm, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tol must be > 0, got {tol}")));
    }
    check_state(state)?;
    let rho = state.r / (state.n * state.m).sqrt();
    Ok(KAPPA_X * sign_correlation_quadrature(rho, 0.5 * state.n, 0.5 * state.m, tol)?)
}

/// Oracle path for `correlator_zz`: the Πz ⊗ Πz delta functions collapse
/// the overlap integral to κ_z · W(0).
pub fn correlator_zz_quadrature(state: &StandardForm) -> Result<f64> {
    Ok(KAPPA_Z * wigner(state, [0.0; 4])?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: StandardForm = StandardForm { n: 1.00618, m: 1.00618, r: 0.15720 };

    #[test]
    fn closed_forms_at_anchor_points() {
        let vac = StandardForm::vacuum();
        assert_eq!(correlator_xx(&vac).unwrap(), 0.0);
        assert_eq!(correlator_zz(&vac).unwrap(), 1.0);

        assert!((correlator_xx(&BASE).unwrap() - 0.015925).abs() < 5e-5);
        assert!((correlator_zz(&BASE).unwrap() - 1.012468).abs() < 5e-5);

        let thermal = StandardForm::new(2.0, 1.5, 0.0);
        assert!((correlator_zz(&thermal).unwrap() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn xx_monotone_in_r() {
        let mut prev = 0.0;
        for i in 1..10 {
            let r = 0.05 * i as f64;
            let xx = correlator_xx(&StandardForm::new(1.2, 1.1, r)).unwrap();
            assert!(xx > prev);
            prev = xx;
        }
    }

    #[test]
    fn xx_depends_only_on_ratio() {
        // xx(n, m, r) = xx(n', m', r') whenever r^2/(nm - r^2) matches
        let a = StandardForm::new(1.3, 1.1, 0.4);
        let ratio = a.r * a.r / a.det_arg();
        let scale: f64 = 2.7;
        let b = StandardForm::new(scale * a.n, scale * a.m, 0.0);
        // pick r' so the ratio matches: r'^2 = ratio * n'm' / (1 + ratio)
        let r2 = ratio * b.n * b.m / (1.0 + ratio);
        let b = StandardForm::new(b.n, b.m, r2.sqrt());
        let xa = correlator_xx(&a).unwrap();
        let xb = correlator_xx(&b).unwrap();
        assert!((xa - xb).abs() < 1e-14);
    }

    #[test]
    fn zz_identity_guard() {
        for s in [BASE, StandardForm::new(1.7, 1.2, 0.5), StandardForm::vacuum()] {
            let zz = correlator_zz(&s).unwrap();
            assert!((zz * s.det_arg() - 1.0).abs() <= 1e-15);
        }
    }

    #[test]
    fn singular_state_rejected() {
        let bad = StandardForm::new(1.0, 1.0, 1.0);
        assert!(correlator_xx(&bad).is_err());
        assert!(correlator_zz(&bad).is_err());
        assert!(correlator_zz_quadrature(&bad).is_err());
    }

    #[test]
    fn quadrature_vacuum() {
        let vac = StandardForm::vacuum();
        let xx = correlator_xx_quadrature(&vac, 1e-8).unwrap();
        assert!(xx.abs() <= 1e-8);
        assert!((correlator_zz_quadrature(&vac).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn quadrature_matches_closed_form_at_baseline() {
        let xx_c = correlator_xx(&BASE).unwrap();
        let xx_q = correlator_xx_quadrature(&BASE, 1e-8).unwrap();
        assert!((xx_q - xx_c).abs() <= 1e-6 * xx_c.abs().max(1.0));
        let zz_c = correlator_zz(&BASE).unwrap();
        let zz_q = correlator_zz_quadrature(&BASE).unwrap();
        assert!((zz_q - zz_c).abs() <= 1e-12);
    }

    #[test]
    fn marginal_quadrature_matches_arcsin_variant() {
        for s in [BASE, StandardForm::new(1.5, 1.2, 0.6), StandardForm::new(1.05, 1.4, 0.3)] {
            let closed = correlator_xx_arcsin(&s).unwrap();
            let quad = correlator_xx_marginal_quadrature(&s, 1e-8).unwrap();
            assert!(
                (quad - closed).abs() <= 1e-6 * closed.abs().max(1.0),
                "closed {closed} quad {quad}"
            );
        }
    }

    #[test]
    fn arcsin_and_arctan_variants_differ() {
        // the two candidate sign-correlation forms are genuinely distinct
        let a = correlator_xx(&BASE).unwrap();
        let b = correlator_xx_arcsin(&BASE).unwrap();
        assert!((a - b).abs() > 0.05);
    }
}
