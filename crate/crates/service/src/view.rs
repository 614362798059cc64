//! JSON shape of a session as seen by clients.

use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use sixbox_core::analysis::POSTERIOR_FLOOR;
use sixbox_core::{frequency_estimate, laplace_rule, LogPosterior, SequenceSummary};

use crate::session::{GameSession, Mode};

/// A probability written with 16 significant digits, or `0` when exactly zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Num {
    pub fn text(self) -> String {
        if self.0 == 0.0 {
            "0".into()
        } else {
            format!("{:.15e}", self.0)
        }
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let raw = RawValue::from_string(self.text()).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SummaryView {
    pub n: u64,
    pub x: u64,
}

/// What reveal discloses: the box, or that the session never had one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Secret {
    Box(usize),
    NoSecret(&'static str),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StateView {
    pub id: String,
    pub mode: &'static str,
    pub boxes: usize,
    pub posterior: Vec<Num>,
    /// Base-10 logs of the posterior; `null` marks an excluded box.
    pub log10_posterior: Vec<Option<f64>>,
    pub predictive_white: Num,
    pub frequency_white: Option<Num>,
    /// Rule of succession applied as if the propensity were continuous.
    pub laplace_white: Num,
    pub most_probable: usize,
    pub odds_vs_most_probable: Vec<Num>,
    pub history_length: usize,
    pub history_summary: SummaryView,
    /// Draws so far as `0` (black) / `1` (white).
    pub history: String,
    pub revealed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub secret_box: Option<Secret>,
}

fn linear(ln: f64) -> Num {
    if ln == f64::NEG_INFINITY {
        Num(0.0)
    } else {
        Num(ln.exp().max(POSTERIOR_FLOOR))
    }
}

impl StateView {
    pub(crate) fn of(session: &GameSession) -> Self {
        let beliefs: &LogPosterior = session.beliefs();
        let summary: SequenceSummary = session.history().summary();
        let mode_box = beliefs.mode();
        let top = beliefs.log_weight(mode_box).ln();
        let weights = beliefs.log_weights();

        let secret_box = session.revealed().then(|| match session.secret() {
            Some(b) => Secret::Box(b),
            None => Secret::NoSecret("no secret"),
        });

        StateView {
            id: session.id().to_string(),
            mode: session.mode().name(),
            boxes: beliefs.model().boxes(),
            posterior: weights.iter().map(|w| linear(w.ln())).collect(),
            log10_posterior: weights
                .iter()
                .map(|w| (!w.is_impossible()).then(|| w.log10()))
                .collect(),
            predictive_white: Num(beliefs.predictive_white()),
            frequency_white: frequency_estimate(summary).map(Num),
            laplace_white: Num(laplace_rule(summary)),
            most_probable: mode_box,
            odds_vs_most_probable: weights.iter().map(|w| linear(w.ln() - top)).collect(),
            history_length: session.history().len(),
            history_summary: SummaryView {
                n: summary.n(),
                x: summary.whites(),
            },
            history: session
                .history()
                .draws()
                .iter()
                .map(|c| char::from(b'0' + c.code()))
                .collect(),
            revealed: session.revealed(),
            secret_box,
        }
    }
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::RandomSecret => "random-secret",
            Mode::ChosenSecret => "chosen-secret",
            Mode::NoSecret => "no-secret",
        }
    }
}
