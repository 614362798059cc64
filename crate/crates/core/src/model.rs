use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

/// The hypothesis space: `m + 1` boxes, box `i` holding `i` white balls out
/// of `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoxModel {
    m: u32,
}

impl BoxModel {
    pub const DEFAULT_BALLS: u32 = 5;

    pub fn new(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(CoreError::InvalidModel(m));
        }
        Ok(BoxModel { m })
    }

    /// Balls per box.
    #[inline]
    pub fn balls(&self) -> u32 {
        self.m
    }

    /// Number of boxes (hypotheses), `m + 1`.
    #[inline]
    pub fn boxes(&self) -> usize {
        self.m as usize + 1
    }

    /// Index of the all-white box.
    #[inline]
    pub fn last(&self) -> usize {
        self.m as usize
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.boxes() {
            Ok(())
        } else {
            Err(CoreError::BoxOutOfRange {
                index,
                boxes: self.boxes(),
            })
        }
    }

    /// Probability of drawing white from box `index`: `index / m`.
    ///
    /// Box 0 and box `m` give exactly 0.0 and 1.0.
    #[inline]
    pub fn propensity(&self, index: usize) -> f64 {
        debug_assert!(index < self.boxes());
        index as f64 / self.m as f64
    }

    pub fn propensities(&self) -> Vec<f64> {
        (0..self.boxes()).map(|i| self.propensity(i)).collect()
    }
}

impl Default for BoxModel {
    fn default() -> Self {
        BoxModel {
            m: Self::DEFAULT_BALLS,
        }
    }
}

/// Ball color, encoded Black = 0 and White = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Color {
    Black,
    White,
}

impl Color {
    #[inline]
    pub fn code(self) -> u8 {
        match self {
            Color::Black => 0,
            Color::White => 1,
        }
    }

    pub fn from_code(code: u8) -> Option<Color> {
        match code {
            0 => Some(Color::Black),
            1 => Some(Color::White),
            _ => None,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Color::Black => 'B',
            Color::White => 'W',
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Accepts `0`/`1` and `B`/`W` (any case).
impl FromStr for Color {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Color> {
        match s.trim() {
            "0" | "B" | "b" => Ok(Color::Black),
            "1" | "W" | "w" => Ok(Color::White),
            other => Err(CoreError::InvalidColor(other.to_string())),
        }
    }
}

/// Number of draws and number of whites among them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct SequenceSummary {
    n: u64,
    x: u64,
}

impl SequenceSummary {
    pub const EMPTY: SequenceSummary = SequenceSummary { n: 0, x: 0 };

    pub fn new(n: u64, x: u64) -> Result<Self> {
        if x > n {
            return Err(CoreError::InvalidSummary { n, x });
        }
        Ok(SequenceSummary { n, x })
    }

    pub fn from_draws<'a>(draws: impl IntoIterator<Item = &'a Color>) -> Self {
        draws.into_iter().fold(Self::EMPTY, |s, c| s.push(*c))
    }

    #[inline]
    pub fn n(&self) -> u64 {
        self.n
    }

    #[inline]
    pub fn whites(&self) -> u64 {
        self.x
    }

    #[inline]
    pub fn blacks(&self) -> u64 {
        self.n - self.x
    }

    #[must_use]
    pub fn push(self, color: Color) -> Self {
        SequenceSummary {
            n: self.n + 1,
            x: self.x + u64::from(color.code()),
        }
    }
}
