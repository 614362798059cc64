use crate::closed_form::{ln_approx_posterior_all_black, ln_approx_predictive_all_black};
use crate::error::{CoreError, Result};
use crate::model::{BoxModel, SequenceSummary};
use crate::posterior::LogPosterior;

/// Exact against closed-form values after `n` blacks in a row.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproximationReport {
    pub model: BoxModel,
    pub rows: Vec<ApproxRow>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproxRow {
    pub n: u64,
    /// Boxes `0..m`; the all-white box is excluded by the first black and
    /// has no row entry.
    pub boxes: Vec<ApproxCell>,
    pub predictive: ApproxCell,
}

/// One exact/approximate pair, both as natural logs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxCell {
    pub ln_exact: f64,
    pub ln_approx: f64,
}

impl ApproxCell {
    pub fn exact(&self) -> f64 {
        self.ln_exact.exp()
    }

    pub fn approx(&self) -> f64 {
        self.ln_approx.exp()
    }

    pub fn ratio(&self) -> f64 {
        self.ln_ratio().exp()
    }

    pub fn ln_ratio(&self) -> f64 {
        self.ln_exact - self.ln_approx
    }

    /// `exact / approx - 1`, without cancellation.
    pub fn deviation(&self) -> f64 {
        self.ln_ratio().exp_m1()
    }
}

/// Rows for `n = 0..=max_n` under a uniform prior.
pub fn approximation_report(model: &BoxModel, max_n: u64) -> Result<ApproximationReport> {
    if max_n == 0 {
        return Err(CoreError::InvalidArgument("max n must be at least 1"));
    }
    let prior = LogPosterior::uniform(*model);
    let rows = (0..=max_n)
        .map(|n| {
            let post = prior.given_summary(SequenceSummary::new(n, 0)?)?;
            let boxes = (0..model.last())
                .map(|i| ApproxCell {
                    ln_exact: post.log_weight(i).ln(),
                    ln_approx: ln_approx_posterior_all_black(model, i, n),
                })
                .collect();
            Ok(ApproxRow {
                n,
                boxes,
                predictive: ApproxCell {
                    ln_exact: post.predictive().value.ln(),
                    ln_approx: ln_approx_predictive_all_black(model, n),
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ApproximationReport {
        model: *model,
        rows,
    })
}
