//! Probabilities held as natural logarithms.
//!
//! Probability zero is a distinguished value (`LogProb::IMPOSSIBLE`), stored
//! as negative infinity. It is absorbing under multiplication, so a box that
//! has been logically excluded stays excluded no matter how much evidence
//! follows.

use std::fmt;
use std::ops::Mul;

/// A probability in `[0, 1]` represented by its natural logarithm.
#[derive(Clone, Copy, PartialEq, PartialOrd)]
pub struct LogProb(f64);

impl LogProb {
    pub const IMPOSSIBLE: LogProb = LogProb(f64::NEG_INFINITY);
    pub const CERTAIN: LogProb = LogProb(0.0);

    /// Wraps a log value. Panics on NaN or values above zero, which would not
    /// be probabilities.
    pub fn new(ln: f64) -> Self {
        assert!(!ln.is_nan(), "log-probability is NaN");
        assert!(ln <= 0.0, "log-probability {ln} is above zero");
        LogProb(ln)
    }

    /// Log value that may exceed zero by rounding noise; clamps to `CERTAIN`.
    pub(crate) fn from_ln_clamped(ln: f64) -> Self {
        debug_assert!(!ln.is_nan());
        LogProb(ln.min(0.0))
    }

    pub fn from_prob(p: f64) -> Self {
        assert!((0.0..=1.0).contains(&p), "probability {p} outside [0, 1]");
        if p == 0.0 {
            Self::IMPOSSIBLE
        } else {
            LogProb(p.ln())
        }
    }

    #[inline]
    pub fn ln(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn is_impossible(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    /// Linear-domain value; subnormal results flush toward 0 as `exp` does.
    #[inline]
    pub fn prob(self) -> f64 {
        self.0.exp()
    }

    /// Base-10 exponent, handy for tables of values far below `f64::MIN_POSITIVE`.
    pub fn log10(self) -> f64 {
        self.0 / std::f64::consts::LN_10
    }
}

impl Mul for LogProb {
    type Output = LogProb;

    fn mul(self, rhs: LogProb) -> LogProb {
        if self.is_impossible() || rhs.is_impossible() {
            LogProb::IMPOSSIBLE
        } else {
            LogProb(self.0 + rhs.0)
        }
    }
}

impl fmt::Debug for LogProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_impossible() {
            f.write_str("LogProb(impossible)")
        } else {
            write!(f, "LogProb({})", self.0)
        }
    }
}

/// `ln(Σ exp(v))` anchored at the largest finite term.
///
/// Returns negative infinity when every term is negative infinity (or the
/// slice is empty). Terms are summed smallest first.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let mut shifted: Vec<f64> = values
        .iter()
        .filter(|v| **v != f64::NEG_INFINITY)
        .map(|v| (v - max).exp())
        .collect();
    shifted.sort_by(|a, b| a.total_cmp(b));
    max + shifted.iter().sum::<f64>().ln()
}
