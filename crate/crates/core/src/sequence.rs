//! Draw sequences: seeded generation and splitting into runs.

use std::path::PathBuf;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{CoreError, Result};
use crate::model::{BoxModel, Color, SequenceSummary};

/// Name of the draw generator, recorded with every generated sequence.
///
/// ChaCha8 seeded through `SeedableRng::seed_from_u64`; each draw takes one
/// `u64`, keeps its top 53 bits as `u` in `[0, 1)` and yields white when
/// `u < i/m`. Changing any of this must bump the version suffix.
pub const GENERATOR: &str = "chacha8-u53-v1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    Generated {
        box_index: usize,
        seed: u64,
        generator: String,
    },
    Loaded {
        path: PathBuf,
    },
    Live,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservationSequence {
    draws: Vec<Color>,
    provenance: Provenance,
}

impl ObservationSequence {
    pub fn new(draws: Vec<Color>, provenance: Provenance) -> Self {
        ObservationSequence { draws, provenance }
    }

    pub fn live() -> Self {
        Self::new(Vec::new(), Provenance::Live)
    }

    pub fn draws(&self) -> &[Color] {
        &self.draws
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.draws.len()
    }

    pub fn is_empty(&self) -> bool {
        self.draws.is_empty()
    }

    pub fn summary(&self) -> SequenceSummary {
        SequenceSummary::from_draws(&self.draws)
    }

    pub fn push(&mut self, color: Color) {
        self.draws.push(color);
    }

    pub fn pop(&mut self) -> Option<Color> {
        self.draws.pop()
    }
}

/// `n` independent draws from box `index`. Deterministic in
/// `(model, index, n, seed)` on every platform.
pub fn generate(
    model: &BoxModel,
    index: usize,
    n: usize,
    seed: u64,
) -> Result<ObservationSequence> {
    model.check_index(index)?;
    let p = model.propensity(index);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws = (0..n)
        .map(|_| {
            let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            if u < p {
                Color::White
            } else {
                Color::Black
            }
        })
        .collect();
    Ok(ObservationSequence::new(
        draws,
        Provenance::Generated {
            box_index: index,
            seed,
            generator: GENERATOR.to_string(),
        },
    ))
}

/// A sequence cut into consecutive runs; only the last may be short.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunPartition {
    run_length: usize,
    runs: Vec<ObservationSequence>,
}

impl RunPartition {
    pub const DEFAULT_RUN_LENGTH: usize = 100;

    pub fn run_length(&self) -> usize {
        self.run_length
    }

    pub fn runs(&self) -> &[ObservationSequence] {
        &self.runs
    }

    /// Zero-based offset of run `k` in the source sequence.
    pub fn start_of(&self, k: usize) -> usize {
        k * self.run_length
    }

    pub fn len(&self) -> usize {
        self.runs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }
}

pub fn split_runs(seq: &ObservationSequence, run_length: usize) -> Result<RunPartition> {
    if run_length == 0 {
        return Err(CoreError::ZeroRunLength);
    }
    let runs = seq
        .draws()
        .chunks(run_length)
        .map(|c| ObservationSequence::new(c.to_vec(), seq.provenance().clone()))
        .collect();
    Ok(RunPartition { run_length, runs })
}
