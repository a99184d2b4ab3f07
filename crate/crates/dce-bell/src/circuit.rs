//! Map experimental circuit parameters to the derived mode-pair quantities:
//! the correlated output frequencies ω± = ωd/2 ± δω, their thermal
//! occupations, and the dimensionless driving parameter
//! f = ε L⁰_eff √(ω₊ω₋) / v that sets the pair-production strength.

use crate::error::{Error, Result};
use crate::units::{HBAR, K_BOLTZMANN};
use serde::Serialize;

/// Driving strength above which the perturbative Bogolyubov treatment is
/// flagged as questionable. Soft bound: a warning, never an error.
pub const PERTURBATIVE_F_LIMIT: f64 = 0.2;

/// Experimental knobs of the SQUID-terminated waveguide.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CircuitParams {
    /// Drive (flux modulation) angular frequency ωd (rad/s).
    pub omega_d: f64,
    /// Dimensionless drive amplitude ε of the Josephson-energy modulation.
    pub epsilon: f64,
    /// Detuning δω of the pair from ωd/2 (rad/s).
    pub delta_omega: f64,
    /// Speed of light in the waveguide (m/s).
    pub v: f64,
    /// Static effective length L⁰_eff of the SQUID mirror (m).
    pub l0_eff: f64,
    /// Temperature of the input quasi-vacuum (K).
    pub temperature: f64,
}

impl CircuitParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.omega_d > 0.0) {
            return Err(Error::domain(format!("omega_d must be > 0, got {}", self.omega_d)));
        }
        if !(self.v > 0.0) {
            return Err(Error::domain(format!("v must be > 0, got {}", self.v)));
        }
        if !(self.l0_eff > 0.0) {
            return Err(Error::domain(format!("l0_eff must be > 0, got {}", self.l0_eff)));
        }
        if !(self.temperature >= 0.0) {
            return Err(Error::domain(format!(
                "temperature must be >= 0, got {}",
                self.temperature
            )));
        }
        if !(self.epsilon >= 0.0) {
            return Err(Error::domain(format!("epsilon must be >= 0, got {}", self.epsilon)));
        }
        if !(self.delta_omega >= 0.0 && self.delta_omega < self.omega_d / 2.0) {
            return Err(Error::domain(format!(
                "delta_omega must satisfy 0 <= delta_omega < omega_d/2, got {}",
                self.delta_omega
            )));
        }
        Ok(())
    }
}

/// Per-mode derived quantities for the correlated {+, -} photon pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModePair {
    pub omega_plus: f64,
    pub omega_minus: f64,
    /// Mean thermal photon number of the higher-frequency mode.
    pub n_plus: f64,
    /// Mean thermal photon number of the lower-frequency mode.
    pub n_minus: f64,
    /// Dimensionless driving parameter f.
    pub f: f64,
    /// Raised when f > 0.2 or ε > 1, i.e. outside the regime where the
    /// perturbative Bogolyubov map is trustworthy.
    pub perturbative_warning: bool,
}

/// ω± = ωd/2 ± δω, returned as (omega_plus, omega_minus).
pub fn mode_frequencies(params: &CircuitParams) -> Result<(f64, f64)> {
    params.validate()?;
    let half = params.omega_d / 2.0;
    Ok((half + params.delta_omega, half - params.delta_omega))
}

/// Bose occupation 1/(e^{ħω/kT} − 1); exactly 0 at T = 0.
pub fn thermal_occupation(omega: f64, temperature: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::domain(format!("omega must be > 0, got {omega}")));
    }
    if !(temperature >= 0.0) {
        return Err(Error::domain(format!("temperature must be >= 0, got {temperature}")));
    }
    if temperature == 0.0 {
        return Ok(0.0);
    }
    let x = HBAR * omega / (K_BOLTZMANN * temperature);
    // exp_m1 keeps precision at high temperature (small x)
    Ok(1.0 / x.exp_m1())
}

/// f = ε L⁰_eff √(ω₊ω₋) / v.
pub fn driving_parameter(params: &CircuitParams) -> Result<f64> {
    let (wp, wm) = mode_frequencies(params)?;
    Ok(params.epsilon * params.l0_eff * (wp * wm).sqrt() / params.v)
}

/// v_eff = ωd L⁰_eff, the effective mirror velocity. Diagnostic only; the
/// Bell pipeline never consumes it.
pub fn effective_mirror_velocity(params: &CircuitParams) -> Result<f64> {
    params.validate()?;
    Ok(params.omega_d * params.l0_eff)
}

/// Modulation-amplitude-weighted variant ε ωd L⁰_eff, exposed alongside the
/// printed formula since the effective-length modulation amplitude is
/// δL_eff = ε L⁰_eff. Diagnostic only.
pub fn effective_mirror_velocity_scaled(params: &CircuitParams) -> Result<f64> {
    params.validate()?;
    Ok(params.epsilon * params.omega_d * params.l0_eff)
}

/// Compose frequencies, occupations and driving parameter into a `ModePair`.
pub fn derive_mode_pair(params: &CircuitParams) -> Result<ModePair> {
    let (omega_plus, omega_minus) = mode_frequencies(params)?;
    let n_plus = thermal_occupation(omega_plus, params.temperature)?;
    let n_minus = thermal_occupation(omega_minus, params.temperature)?;
    let f = driving_parameter(params)?;
    Ok(ModePair {
        omega_plus,
        omega_minus,
        n_plus,
        n_minus,
        f,
        perturbative_warning: f > PERTURBATIVE_F_LIMIT || params.epsilon > 1.0,
    })
}

#[cfg(test)]
pub(crate) fn fig1_baseline(temperature: f64, epsilon: f64) -> CircuitParams {
    CircuitParams {
        omega_d: 20.0 * std::f64::consts::PI * 1e9,
        epsilon,
        delta_omega: 0.0,
        v: 1.2e8,
        l0_eff: 5e-4,
        temperature,
    }
}
