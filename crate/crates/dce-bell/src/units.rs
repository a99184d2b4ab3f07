//! Physical constants and the unit conversions used at the CLI boundary.
//!
//! Everything downstream works in coherent SI (rad/s, K, m, m/s); the CLI
//! accepts the experiment-friendly units (GHz-angular, mK, mm) and converts
//! here. "GHz-angular" means the quoted number times 1e9 rad/s, so a drive
//! of 20π GHz is 20π × 1e9 rad/s.

use crate::error::{Error, Result};

/// Reduced Planck constant (J·s), CODATA SI-exact.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Boltzmann constant (J/K), SI-exact.
pub const K_BOLTZMANN: f64 = 1.380_649e-23;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrequencyUnit {
    RadPerS,
    GhzAngular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TemperatureUnit {
    Kelvin,
    Millikelvin,
}

/// Convert a nonnegative frequency value to angular frequency in rad/s.
pub fn to_angular_frequency(value: f64, unit: FrequencyUnit) -> Result<f64> {
    if !(value >= 0.0) {
        return Err(Error::domain(format!(
            "angular frequency must be nonnegative, got {value}"
        )));
    }
    Ok(match unit {
        FrequencyUnit::RadPerS => value,
        FrequencyUnit::GhzAngular => value * 1e9,
    })
}

/// Convert a nonnegative temperature value to kelvin.
pub fn to_kelvin(value: f64, unit: TemperatureUnit) -> Result<f64> {
    if !(value >= 0.0) {
        return Err(Error::domain(format!(
            "temperature must be nonnegative, got {value}"
        )));
    }
    Ok(match unit {
        TemperatureUnit::Kelvin => value,
        TemperatureUnit::Millikelvin => value * 1e-3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn ghz_angular_scales_by_1e9() {
        let w = to_angular_frequency(20.0 * PI, FrequencyUnit::GhzAngular).unwrap();
        assert!((w - 6.2832e10).abs() / 6.2832e10 < 1e-4);
        assert_eq!(to_angular_frequency(0.0, FrequencyUnit::GhzAngular).unwrap(), 0.0);
        assert_eq!(to_angular_frequency(1.0, FrequencyUnit::RadPerS).unwrap(), 1.0);
    }

    #[test]
    fn millikelvin_scales_by_1e_minus_3() {
        assert_eq!(to_kelvin(15.0, TemperatureUnit::Millikelvin).unwrap(), 0.015);
        assert_eq!(to_kelvin(0.0, TemperatureUnit::Kelvin).unwrap(), 0.0);
        assert_eq!(to_kelvin(1.0, TemperatureUnit::Kelvin).unwrap(), 1.0);
    }

    #[test]
    fn negative_values_rejected() {
        assert!(to_angular_frequency(-1.0, FrequencyUnit::RadPerS).is_err());
        assert!(to_kelvin(-0.001, TemperatureUnit::Millikelvin).is_err());
    }

    #[test]
    fn ghz_round_trip() {
        for x in [0.0, 1.0, 20.0 * PI, 62.832, 1e-6, 1e6] {
            let w = to_angular_frequency(x, FrequencyUnit::GhzAngular).unwrap();
            assert_eq!(w / 1e9, x);
        }
    }
}
