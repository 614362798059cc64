//! Chance that a standard normal draw rounds to a given decimal value.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use statrs::function::erf::erfc;

use crate::error::{CoreError, Result};

pub const MAX_DECIMALS: u32 = 300;

/// Below this width the CDF difference cancels badly and the density
/// expansion is used instead.
const NARROW_WIDTH: f64 = 1e-8;

/// `Φ(value + δ) - Φ(value - δ)` with `δ = 10^-decimals / 2`: the
/// probability of a standard normal draw that prints as `value` when rounded
/// to `decimals` places.
pub fn gaussian_tiny_chance(value: f64, decimals: u32) -> Result<f64> {
    if !value.is_finite() {
        return Err(CoreError::NonFinite(value));
    }
    if decimals == 0 || decimals > MAX_DECIMALS {
        return Err(CoreError::Decimals {
            got: decimals,
            max: MAX_DECIMALS,
        });
    }
    let width = 10f64.powi(-(decimals as i32));
    if width < NARROW_WIDTH {
        // ∫ φ over [v - w/2, v + w/2] = φ(v) w (1 + (v² - 1) w² / 24 + O(w⁴))
        let density = (-0.5 * value * value).exp() / (2.0 * PI).sqrt();
        Ok(density * width * (1.0 + (value * value - 1.0) * width * width / 24.0))
    } else {
        let half = width / 2.0;
        // difference of the two tails on the side away from the mode
        let tail = |z: f64| 0.5 * erfc(z * FRAC_1_SQRT_2);
        let a = value.abs() - half;
        let b = value.abs() + half;
        Ok((tail(a) - tail(b)).max(0.0))
    }
}
