use crate::baselines::{frequency_estimate, laplace_rule};
use crate::error::Result;
use crate::model::{Color, SequenceSummary};
use crate::posterior::{LogPosterior, Predictive};
use crate::sequence::ObservationSequence;

use super::anatomy::{odds_table, OddsTable};

/// Smallest nonzero posterior written to tables; exact zeros stay 0.
pub const POSTERIOR_FLOOR: f64 = 1e-300;

/// Beliefs and forecasts right after draw number `step` (1-based).
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryPoint {
    pub step: usize,
    pub observed: Color,
    pub summary: SequenceSummary,
    pub belief: LogPosterior,
    pub predictive: Predictive,
    pub frequency_white: Option<f64>,
    pub laplace_white: f64,
}

impl TrajectoryPoint {
    /// Linear posterior with nonzero weights clamped to [`POSTERIOR_FLOOR`].
    pub fn posterior(&self) -> Vec<f64> {
        clamped(&self.belief)
    }

    /// Base-10 logs of the posterior, `None` for excluded boxes.
    pub fn log10_posterior(&self) -> Vec<Option<f64>> {
        self.belief
            .log_weights()
            .iter()
            .map(|w| (!w.is_impossible()).then(|| w.log10()))
            .collect()
    }
}

pub(crate) fn clamped(belief: &LogPosterior) -> Vec<f64> {
    belief
        .log_weights()
        .iter()
        .map(|w| {
            if w.is_impossible() {
                0.0
            } else {
                w.prob().max(POSTERIOR_FLOOR)
            }
        })
        .collect()
}

/// One point per draw; point `k` reflects the first `k` draws.
pub fn trajectory(seq: &ObservationSequence, prior: &LogPosterior) -> Result<Vec<TrajectoryPoint>> {
    let mut belief = prior.clone();
    let mut summary = SequenceSummary::EMPTY;
    let mut points = Vec::with_capacity(seq.len());
    for (k, &color) in seq.draws().iter().enumerate() {
        belief = belief.observe(color)?;
        summary = summary.push(color);
        points.push(TrajectoryPoint {
            step: k + 1,
            observed: color,
            summary,
            predictive: belief.predictive(),
            frequency_white: frequency_estimate(summary),
            laplace_white: laplace_rule(summary),
            belief: belief.clone(),
        });
    }
    Ok(points)
}

/// State after a whole sequence, computed from its summary in one step.
#[derive(Debug, Clone, PartialEq)]
pub struct FinalState {
    pub summary: SequenceSummary,
    pub belief: LogPosterior,
    pub predictive: Predictive,
    pub frequency_white: Option<f64>,
    pub laplace_white: f64,
    pub mode: usize,
    pub odds: OddsTable,
}

impl FinalState {
    pub fn posterior(&self) -> Vec<f64> {
        clamped(&self.belief)
    }
}

pub fn final_state(seq: &ObservationSequence, prior: &LogPosterior) -> Result<FinalState> {
    let summary = seq.summary();
    let belief = prior.given_summary(summary)?;
    Ok(FinalState {
        summary,
        predictive: belief.predictive(),
        frequency_white: frequency_estimate(summary),
        laplace_white: laplace_rule(summary),
        mode: belief.mode(),
        odds: odds_table(summary, prior.model()),
        belief,
    })
}
