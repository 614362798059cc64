//! Likelihoods of Bernoulli data under each box, and Bayes factors.

use statrs::function::gamma::ln_gamma;

use crate::error::{CoreError, Result};
use crate::logprob::LogProb;
use crate::model::{BoxModel, SequenceSummary};

/// Above this many factors `ln_choose` switches from the exact product to
/// log-gamma.
const DIRECT_CHOOSE_LIMIT: u64 = 4096;

/// Probability of one particular ordered sequence with the given summary,
/// `π^x (1-π)^(n-x)`.
pub fn sequence_log_likelihood(
    model: &BoxModel,
    index: usize,
    summary: SequenceSummary,
) -> Result<LogProb> {
    model.check_index(index)?;
    let (n, x) = (summary.n(), summary.whites());
    let blacks = n - x;
    let m = model.balls() as usize;

    if index == 0 {
        return Ok(if x == 0 {
            LogProb::CERTAIN
        } else {
            LogProb::IMPOSSIBLE
        });
    }
    if index == m {
        return Ok(if blacks == 0 {
            LogProb::CERTAIN
        } else {
            LogProb::IMPOSSIBLE
        });
    }
    let ln_white = (index as f64 / m as f64).ln();
    let ln_black = ((m - index) as f64 / m as f64).ln();
    Ok(LogProb::from_ln_clamped(
        x as f64 * ln_white + blacks as f64 * ln_black,
    ))
}

/// Probability of observing `x` whites in `n` draws in any order,
/// `C(n, x) π^x (1-π)^(n-x)`.
pub fn binomial_log_likelihood(
    model: &BoxModel,
    index: usize,
    summary: SequenceSummary,
) -> Result<LogProb> {
    let seq = sequence_log_likelihood(model, index, summary)?;
    if seq.is_impossible() {
        return Ok(seq);
    }
    Ok(LogProb::from_ln_clamped(
        seq.ln() + ln_choose(summary.n(), summary.whites()),
    ))
}

/// `ln C(n, k)`. Zero when `k > n` is not meaningful, so callers must keep
/// `k <= n`.
pub fn ln_choose(n: u64, k: u64) -> f64 {
    debug_assert!(k <= n);
    let k = k.min(n - k);
    if k == 0 {
        return 0.0;
    }
    if k <= DIRECT_CHOOSE_LIMIT {
        let base = (n - k) as f64;
        let mut terms: Vec<f64> = (1..=k)
            .map(|j| ((base + j as f64) / j as f64).ln())
            .collect();
        terms.sort_by(|a, b| a.total_cmp(b));
        terms.iter().sum()
    } else {
        ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
    }
}

/// Natural log of the Bayes-Turing factor `P(data | B_i) / P(data | B_j)`.
///
/// `+inf` when only `j` is excluded, `-inf` when only `i` is. Identical
/// indices always give 0.
pub fn log_bayes_factor(
    model: &BoxModel,
    i: usize,
    j: usize,
    summary: SequenceSummary,
) -> Result<f64> {
    let li = sequence_log_likelihood(model, i, summary)?;
    let lj = sequence_log_likelihood(model, j, summary)?;
    if i == j {
        return Ok(0.0);
    }
    match (li.is_impossible(), lj.is_impossible()) {
        (true, true) => Err(CoreError::IndeterminateOdds { i, j }),
        (false, true) => Ok(f64::INFINITY),
        (true, false) => Ok(f64::NEG_INFINITY),
        (false, false) => Ok(li.ln() - lj.ln()),
    }
}

/// Bayes-Turing factor of box `i` against box `j`; see [`log_bayes_factor`].
pub fn bayes_factor(model: &BoxModel, i: usize, j: usize, summary: SequenceSummary) -> Result<f64> {
    log_bayes_factor(model, i, j, summary).map(f64::exp)
}
