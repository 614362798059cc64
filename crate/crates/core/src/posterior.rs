//! Normalized beliefs over boxes, kept in log domain.

use serde::Serialize;

use crate::error::{CoreError, Result};
use crate::likelihood::sequence_log_likelihood;
use crate::logprob::{log_sum_exp, LogProb};
use crate::model::{BoxModel, Color, SequenceSummary};

/// Posterior (or prior) probabilities of each box.
///
/// Always normalized. Excluded boxes hold [`LogProb::IMPOSSIBLE`] and stay
/// excluded through every further update.
#[derive(Debug, Clone, PartialEq)]
pub struct LogPosterior {
    model: BoxModel,
    log_weights: Vec<LogProb>,
}

/// Probability that the next draw is white, with its exact distance from the
/// nearest supported propensities.
///
/// The mixture value alone cannot show that it sits strictly above the
/// smallest supported propensity once that gap falls below `f64` resolution
/// (after 1000 draws from box 1 the gap is near `1e-40`). `ln_excess` and
/// `ln_deficit` keep those gaps in log domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Predictive {
    pub value: f64,
    /// Smallest propensity among boxes that are not excluded.
    pub floor: f64,
    /// Largest propensity among boxes that are not excluded.
    pub ceiling: f64,
    /// `ln(value - floor)`; `-inf` when all weight sits on one box.
    pub ln_excess: f64,
    /// `ln(ceiling - value)`; `-inf` when all weight sits on one box.
    pub ln_deficit: f64,
}

impl Predictive {
    pub fn excess(&self) -> f64 {
        self.ln_excess.exp()
    }

    pub fn deficit(&self) -> f64 {
        self.ln_deficit.exp()
    }

    /// True when the exact predictive lies strictly above `threshold`.
    pub fn strictly_above(&self, threshold: f64) -> bool {
        self.floor > threshold || (self.floor == threshold && self.ln_excess > f64::NEG_INFINITY)
    }

    /// True when the exact predictive lies strictly below `threshold`.
    pub fn strictly_below(&self, threshold: f64) -> bool {
        self.ceiling < threshold
            || (self.ceiling == threshold && self.ln_deficit > f64::NEG_INFINITY)
    }
}

impl LogPosterior {
    /// Every box equally likely.
    pub fn uniform(model: BoxModel) -> Self {
        let w = LogProb::new(-(model.boxes() as f64).ln());
        LogPosterior {
            model,
            log_weights: vec![w; model.boxes()],
        }
    }

    /// Prior from non-negative weights, normalized here.
    pub fn from_weights(model: BoxModel, weights: &[f64]) -> Result<Self> {
        if weights.len() != model.boxes() {
            return Err(CoreError::PriorLength {
                got: weights.len(),
                expected: model.boxes(),
            });
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(CoreError::InvalidPrior(format!(
                "weight {w} is not a finite non-negative number"
            )));
        }
        let raw: Vec<f64> = weights
            .iter()
            .map(|&w| if w == 0.0 { f64::NEG_INFINITY } else { w.ln() })
            .collect();
        Self::normalized(model, raw)
            .map_err(|_| CoreError::InvalidPrior("all weights are zero".into()))
    }

    /// Prior from log weights (any scale), normalized here.
    pub fn from_log_weights(model: BoxModel, log_weights: Vec<f64>) -> Result<Self> {
        if log_weights.len() != model.boxes() {
            return Err(CoreError::PriorLength {
                got: log_weights.len(),
                expected: model.boxes(),
            });
        }
        if log_weights
            .iter()
            .any(|w| w.is_nan() || *w == f64::INFINITY)
        {
            return Err(CoreError::InvalidPrior("log weight is NaN or +inf".into()));
        }
        Self::normalized(model, log_weights)
    }

    fn normalized(model: BoxModel, raw: Vec<f64>) -> Result<Self> {
        let total = log_sum_exp(&raw);
        if total == f64::NEG_INFINITY {
            return Err(CoreError::ContradictoryEvidence);
        }
        let log_weights = raw
            .into_iter()
            .map(|w| {
                if w == f64::NEG_INFINITY {
                    LogProb::IMPOSSIBLE
                } else {
                    LogProb::from_ln_clamped(w - total)
                }
            })
            .collect();
        Ok(LogPosterior { model, log_weights })
    }

    pub fn model(&self) -> &BoxModel {
        &self.model
    }

    pub fn log_weights(&self) -> &[LogProb] {
        &self.log_weights
    }

    pub fn log_weight(&self, index: usize) -> LogProb {
        self.log_weights[index]
    }

    /// Linear-domain probabilities. Tiny weights may flush to zero here;
    /// use [`Self::log_weights`] to tell them apart from exclusions.
    pub fn probabilities(&self) -> Vec<f64> {
        self.log_weights.iter().map(|w| w.prob()).collect()
    }

    pub fn is_excluded(&self, index: usize) -> bool {
        self.log_weights[index].is_impossible()
    }

    /// Most probable box; the lowest index wins ties.
    pub fn mode(&self) -> usize {
        let mut best = 0;
        for (i, w) in self.log_weights.iter().enumerate() {
            if w.ln() > self.log_weights[best].ln() {
                best = i;
            }
        }
        best
    }

    /// Batch update on a summary: weights proportional to prior times the
    /// sequence likelihood of each box.
    pub fn given_summary(&self, summary: SequenceSummary) -> Result<Self> {
        let raw = self
            .log_weights
            .iter()
            .enumerate()
            .map(|(i, w)| sequence_log_likelihood(&self.model, i, summary).map(|l| (*w * l).ln()))
            .collect::<Result<Vec<_>>>()?;
        Self::normalized(self.model, raw)
    }

    /// Single-draw update.
    pub fn observe(&self, color: Color) -> Result<Self> {
        let m = self.model.balls() as f64;
        let raw = self
            .log_weights
            .iter()
            .enumerate()
            .map(|(i, w)| {
                let favorable = match color {
                    Color::White => i as f64,
                    Color::Black => m - i as f64,
                };
                let lik = if favorable == 0.0 {
                    LogProb::IMPOSSIBLE
                } else {
                    LogProb::from_ln_clamped((favorable / m).ln())
                };
                (*w * lik).ln()
            })
            .collect();
        Self::normalized(self.model, raw)
    }

    /// Folds [`Self::observe`] over a sequence of draws.
    pub fn observe_all<'a>(&self, draws: impl IntoIterator<Item = &'a Color>) -> Result<Self> {
        draws
            .into_iter()
            .try_fold(self.clone(), |post, c| post.observe(*c))
    }

    /// `Σ πᵢ P(Bᵢ)`, accumulated smallest term first.
    pub fn predictive_white(&self) -> f64 {
        let mut terms: Vec<f64> = self
            .log_weights
            .iter()
            .enumerate()
            .map(|(i, w)| self.model.propensity(i) * w.prob())
            .collect();
        terms.sort_by(|a, b| a.total_cmp(b));
        terms.iter().sum::<f64>().min(1.0)
    }

    /// Predictive probability of white plus its exact gaps to the extreme
    /// supported propensities.
    pub fn predictive(&self) -> Predictive {
        let supported: Vec<usize> = (0..self.model.boxes())
            .filter(|&i| !self.is_excluded(i))
            .collect();
        let lo = supported[0];
        let hi = supported[supported.len() - 1];
        let m = self.model.balls() as f64;
        let gap = |steps: usize, w: LogProb| (steps as f64 / m).ln() + w.ln();

        let excess: Vec<f64> = supported
            .iter()
            .filter(|&&i| i > lo)
            .map(|&i| gap(i - lo, self.log_weights[i]))
            .collect();
        let deficit: Vec<f64> = supported
            .iter()
            .filter(|&&i| i < hi)
            .map(|&i| gap(hi - i, self.log_weights[i]))
            .collect();

        Predictive {
            value: self.predictive_white(),
            floor: self.model.propensity(lo),
            ceiling: self.model.propensity(hi),
            ln_excess: log_sum_exp(&excess).min(0.0),
            ln_deficit: log_sum_exp(&deficit).min(0.0),
        }
    }

    /// `|Σ exp(w) - 1|`, for checking the normalization invariant.
    pub fn normalization_error(&self) -> f64 {
        let mut p = self.probabilities();
        p.sort_by(|a, b| a.total_cmp(b));
        (p.iter().sum::<f64>() - 1.0).abs()
    }
}

/// Uniform prior updated on a summary.
pub fn posterior_from_summary(
    prior: &LogPosterior,
    summary: SequenceSummary,
) -> Result<LogPosterior> {
    prior.given_summary(summary)
}
