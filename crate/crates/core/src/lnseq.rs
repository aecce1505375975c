//! Scaled, rounded cumulative log-gap transform of a gap sequence.
//!
//! The gap 1 between 2 and 3 contributes ln 1 = 0, which rounds to 0 and is
//! discarded, so the sequence built from prime gaps starts at 7.

use crate::error::{Error, Result};
use crate::primes::GapSequence;

/// Natural numbers obtained from round(scale * cumsum(ln gap)).
#[derive(Debug, Clone, PartialEq)]
pub struct LnSequence {
    values: Vec<u64>,
    scale: f64,
    source_gap_count: usize,
    dropped_below_one: usize,
    dropped_nonincreasing: usize,
}

impl LnSequence {
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn source_gap_count(&self) -> usize {
        self.source_gap_count
    }

    /// Entries that rounded below 1 and were discarded (the leading 0).
    pub fn dropped_below_one(&self) -> usize {
        self.dropped_below_one
    }

    /// Entries that rounded onto their predecessor and were discarded.
    ///
    /// Cannot happen for gaps >= 2 at scale 10; the count is a diagnostic for
    /// experiments with smaller scales.
    pub fn dropped_nonincreasing(&self) -> usize {
        self.dropped_nonincreasing
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn last(&self) -> Option<u64> {
        self.values.last().copied()
    }
}

/// Element-wise natural logarithm of the gaps.
pub fn log_gaps(g: &GapSequence) -> Vec<f64> {
    g.gaps().iter().map(|&gap| (gap as f64).ln()).collect()
}

/// Cumulative sum of log-gaps, multiplied by `scale`, before rounding.
pub fn cumulative_log_gaps(g: &GapSequence, scale: f64) -> Result<Vec<f64>> {
    if !scale.is_finite() || scale <= 0.0 {
        return Err(Error::InvalidParameter("scale must be > 0".into()));
    }
    let mut acc = 0.0;
    Ok(log_gaps(g)
        .into_iter()
        .map(|l| {
            acc += l;
            scale * acc
        })
        .collect())
}

/// Rounds the cumulative series to nearest integers (half away from zero),
/// discarding entries below 1 and any entry that fails to increase.
pub fn ln_sequence(g: &GapSequence, scale: f64) -> Result<LnSequence> {
    let pre = cumulative_log_gaps(g, scale)?;
    let mut values: Vec<u64> = Vec::with_capacity(pre.len());
    let mut dropped_below_one = 0;
    let mut dropped_nonincreasing = 0;
    for v in pre {
        let rounded = v.round();
        if rounded < 1.0 {
            dropped_below_one += 1;
            continue;
        }
        let rounded = rounded as u64;
        if values.last().is_some_and(|&prev| rounded <= prev) {
            dropped_nonincreasing += 1;
            continue;
        }
        values.push(rounded);
    }
    Ok(LnSequence {
        values,
        scale,
        source_gap_count: g.len(),
        dropped_below_one,
        dropped_nonincreasing,
    })
}
