//! Exact sequential Bayesian inference over a family of urns.
//!
//! Box `i` of `m + 1` holds `i` white balls out of `m`. Given a sequence of
//! drawn colors, the crate computes which box the draws most plausibly came
//! from, the probability that the next draw is white, and the frequency and
//! rule-of-succession baselines, all without underflow: probabilities live
//! in natural-log domain, and boxes excluded by the data carry an exact zero.
//!
//! ```
//! use sixbox_core::{BoxModel, Color, LogPosterior};
//!
//! let mut belief = LogPosterior::uniform(BoxModel::default());
//! for _ in 0..16 {
//!     belief = belief.observe(Color::Black).unwrap();
//! }
//! belief = belief.observe(Color::White).unwrap();
//! assert!(belief.is_excluded(0));
//! assert!((belief.predictive_white() - 0.203948).abs() < 1e-6);
//! ```

pub mod analysis;
pub mod baselines;
pub mod closed_form;
pub mod error;
pub mod likelihood;
pub mod logprob;
pub mod model;
pub mod posterior;
pub mod report;
pub mod seqfile;
pub mod sequence;

pub use baselines::{frequency_estimate, laplace_rule};
pub use closed_form::{approx_posterior_all_black, approx_predictive_all_black};
pub use error::{CoreError, ParseError, Result};
pub use likelihood::{
    bayes_factor, binomial_log_likelihood, ln_choose, log_bayes_factor, sequence_log_likelihood,
};
pub use logprob::{log_sum_exp, LogProb};
pub use model::{BoxModel, Color, SequenceSummary};
pub use posterior::{posterior_from_summary, LogPosterior, Predictive};
pub use report::{Format, Report};
pub use seqfile::{read_sequence, write_sequence};
pub use sequence::{
    generate, split_runs, ObservationSequence, Provenance, RunPartition, GENERATOR,
};
