use crate::error::CoreError;
use crate::likelihood::{binomial_log_likelihood, log_bayes_factor, sequence_log_likelihood};
use crate::logprob::LogProb;
use crate::model::{BoxModel, SequenceSummary};
use crate::posterior::LogPosterior;

/// Per-box posterior next to the probability of the summary (binomial) and
/// of the particular ordered sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct LikelihoodAnatomy {
    pub summary: SequenceSummary,
    pub rows: Vec<AnatomyRow>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnatomyRow {
    pub box_index: usize,
    pub propensity: f64,
    pub posterior: LogProb,
    pub binomial: LogProb,
    pub sequence: LogProb,
}

impl AnatomyRow {
    /// `ln(binomial / sequence)`, i.e. `ln C(n, x)`; `None` when excluded.
    pub fn ln_ratio(&self) -> Option<f64> {
        (!self.sequence.is_impossible()).then(|| self.binomial.ln() - self.sequence.ln())
    }
}

/// Anatomy under a uniform prior.
pub fn anatomy(summary: SequenceSummary, model: &BoxModel) -> LikelihoodAnatomy {
    let prior = LogPosterior::uniform(*model);
    // uniform prior never excludes every box from a valid summary when m >= 2;
    // for m = 1 with both colors seen the posterior row is all zeros
    let posterior = prior.given_summary(summary).ok();
    let rows = (0..model.boxes())
        .map(|i| AnatomyRow {
            box_index: i,
            propensity: model.propensity(i),
            posterior: posterior
                .as_ref()
                .map_or(LogProb::IMPOSSIBLE, |p| p.log_weight(i)),
            binomial: binomial_log_likelihood(model, i, summary).expect("index in range"),
            sequence: sequence_log_likelihood(model, i, summary).expect("index in range"),
        })
        .collect();
    LikelihoodAnatomy { summary, rows }
}

/// Pairwise Bayes-Turing factors `odds[i][j] = P(data | Bᵢ) / P(data | Bⱼ)`,
/// kept as natural logs so factors beyond `f64` range survive.
#[derive(Debug, Clone, PartialEq)]
pub struct OddsTable {
    pub summary: SequenceSummary,
    /// `None` where both boxes are excluded (indeterminate).
    pub ln_odds: Vec<Vec<Option<f64>>>,
}

impl OddsTable {
    pub fn boxes(&self) -> usize {
        self.ln_odds.len()
    }

    /// Linear factor; may overflow to `inf` for finite but huge odds.
    pub fn odds(&self, i: usize, j: usize) -> Option<f64> {
        self.ln_odds[i][j].map(f64::exp)
    }
}

pub fn odds_table(summary: SequenceSummary, model: &BoxModel) -> OddsTable {
    let k = model.boxes();
    let ln_odds = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| match log_bayes_factor(model, i, j, summary) {
                    Ok(v) => Some(v),
                    Err(CoreError::IndeterminateOdds { .. }) => None,
                    Err(e) => unreachable!("indices are in range: {e}"),
                })
                .collect()
        })
        .collect();
    OddsTable { summary, ln_odds }
}
