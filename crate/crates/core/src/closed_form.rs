//! Large-`n` approximations for a run of blacks only.
//!
//! With `n` blacks the all-black box dominates the normalizer, so
//! `P(Bᵢ | n blacks) ≈ ((m - i) / m)^n` and the predictive probability of
//! white is carried by box 1: `(1/m) ((m - 1) / m)^n`.

use crate::error::{CoreError, Result};
use crate::model::BoxModel;

/// `((m - i) / m)^n`; undefined for the all-white box, which any black
/// excludes.
pub fn approx_posterior_all_black(model: &BoxModel, index: usize, n: u64) -> Result<f64> {
    model.check_index(index)?;
    if index == model.last() {
        return Err(CoreError::AllWhiteBox(index));
    }
    Ok(ln_approx_posterior_all_black(model, index, n).exp())
}

pub(crate) fn ln_approx_posterior_all_black(model: &BoxModel, index: usize, n: u64) -> f64 {
    let m = model.balls() as f64;
    n as f64 * ((m - index as f64) / m).ln()
}

/// `(1/m) ((m - 1) / m)^n`.
pub fn approx_predictive_all_black(model: &BoxModel, n: u64) -> f64 {
    ln_approx_predictive_all_black(model, n).exp()
}

pub(crate) fn ln_approx_predictive_all_black(model: &BoxModel, n: u64) -> f64 {
    let m = model.balls() as f64;
    -m.ln() + n as f64 * ((m - 1.0) / m).ln()
}
