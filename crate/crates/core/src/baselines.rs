//! Non-Bayesian forecasts shown next to the predictive probability.

use crate::model::SequenceSummary;

/// Rule of succession `(x + 1) / (n + 2)`, applied as if the propensity were
/// uniform on `[0, 1]`. Reported as the "misused Laplace" baseline, since the
/// box hypotheses are discrete.
pub fn laplace_rule(summary: SequenceSummary) -> f64 {
    (summary.whites() as f64 + 1.0) / (summary.n() as f64 + 2.0)
}

/// Relative frequency of white, `None` before the first draw.
pub fn frequency_estimate(summary: SequenceSummary) -> Option<f64> {
    (summary.n() > 0).then(|| summary.whites() as f64 / summary.n() as f64)
}
