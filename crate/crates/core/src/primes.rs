//! Prime generation, gap statistics, and the twin-killed K2 subsequence.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Hard cap on how many primes a single call may generate.
pub const DEFAULT_MAX_PRIME_COUNT: usize = 10_000_000;
/// Hard cap on sieve limits; the toolkit targets desk-scale runs.
pub const DEFAULT_MAX_SIEVE_LIMIT: u64 = 100_000_000;

/// Where a prime sequence came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceOrigin {
    /// Every prime in increasing order.
    Full,
    /// Full sequence with the larger member of each twin pair removed.
    K2Filtered,
}

/// A strictly increasing sequence of primes (or a filtered subsequence).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSequence {
    values: Vec<u64>,
    origin: SequenceOrigin,
}

impl PrimeSequence {
    /// Validates ordering, the `>= 2` floor, and (for `Full` origin) primality
    /// of every element.
    pub fn new(values: Vec<u64>, origin: SequenceOrigin) -> Result<Self> {
        for (i, w) in values.windows(2).enumerate() {
            if w[0] >= w[1] {
                return Err(Error::NonMonotone { index: i + 1 });
            }
        }
        if values.first().is_some_and(|&p| p < 2) {
            return Err(Error::Domain("prime sequence element below 2".into()));
        }
        if origin == SequenceOrigin::Full {
            if let Some(&p) = values.iter().find(|&&p| !is_prime(p)) {
                return Err(Error::Domain(format!("{p} is not prime")));
            }
        }
        Ok(Self { values, origin })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn origin(&self) -> SequenceOrigin {
        self.origin
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Consecutive differences of a prime sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapSequence {
    gaps: Vec<u64>,
    source_count: usize,
}

impl GapSequence {
    /// Builds a gap sequence from raw gaps; every gap must be >= 1.
    pub fn from_gaps(gaps: Vec<u64>, source_count: usize) -> Result<Self> {
        if gaps.contains(&0) {
            return Err(Error::Domain("gap of 0 is not allowed".into()));
        }
        Ok(Self { gaps, source_count })
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    pub fn source_count(&self) -> usize {
        self.source_count
    }

    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }
}

/// Exact gap-value counts plus the most frequent gap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapHistogram {
    counts: BTreeMap<u64, u64>,
    mode: u64,
}

impl GapHistogram {
    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    /// Gap value with the maximal count; ties resolve to the smallest gap.
    pub fn mode(&self) -> u64 {
        self.mode
    }
}

/// One row of the gap-growth diagnostic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapGrowthRow {
    pub center_prime: u64,
    pub mean_gap: f64,
    pub ln_center: f64,
}

/// Deterministic trial-division primality check.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Sieve of Eratosthenes up to `limit` inclusive.
fn sieve(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for n in 2..=limit {
        if !composite[n] {
            primes.push(n as u64);
            let mut m = n * n;
            while m <= limit {
                composite[m] = true;
                m += n;
            }
        }
    }
    primes
}

/// Upper bound for the n-th prime: n(ln n + ln ln n) for n >= 6.
fn nth_prime_bound(count: usize) -> u64 {
    if count < 6 {
        return 13;
    }
    let n = count as f64;
    (n * (n.ln() + n.ln().ln())).ceil() as u64 + 1
}

/// First `count` primes starting at 2.
pub fn first_n_primes(count: usize) -> Result<PrimeSequence> {
    if count == 0 {
        return Err(Error::InvalidParameter("count must be >= 1".into()));
    }
    if count > DEFAULT_MAX_PRIME_COUNT {
        return Err(Error::ResourceLimit {
            what: "prime count",
            requested: count as u64,
            max: DEFAULT_MAX_PRIME_COUNT as u64,
        });
    }
    let mut bound = nth_prime_bound(count);
    loop {
        let primes = sieve(bound);
        if primes.len() >= count {
            return PrimeSequence::new(primes[..count].to_vec(), SequenceOrigin::Full);
        }
        // The analytic bound is only valid asymptotically; extend and retry.
        bound = bound + bound / 2 + 16;
    }
}

/// All primes `<= limit`.
pub fn primes_up_to(limit: u64) -> Result<PrimeSequence> {
    if limit < 2 {
        return Err(Error::InvalidParameter("limit must be >= 2".into()));
    }
    if limit > DEFAULT_MAX_SIEVE_LIMIT {
        return Err(Error::ResourceLimit {
            what: "sieve limit",
            requested: limit,
            max: DEFAULT_MAX_SIEVE_LIMIT,
        });
    }
    PrimeSequence::new(sieve(limit), SequenceOrigin::Full)
}

/// Consecutive gaps `seq[i+1] - seq[i]`.
pub fn gaps(seq: &PrimeSequence) -> Result<GapSequence> {
    if seq.len() < 2 {
        return Err(Error::TooShortInput {
            min: 2,
            got: seq.len(),
        });
    }
    let gaps = seq.values().windows(2).map(|w| w[1] - w[0]).collect();
    GapSequence::from_gaps(gaps, seq.len())
}

/// All pairs `(p, p+2)` with both members in the sequence.
///
/// Detection runs on the original sequence, so an overlapping chain like
/// 3, 5, 7 yields both (3, 5) and (5, 7).
pub fn twin_pairs(seq: &PrimeSequence) -> Vec<(u64, u64)> {
    seq.values()
        .windows(2)
        .filter(|w| w[1] - w[0] == 2)
        .map(|w| (w[0], w[1]))
        .collect()
}

/// Removes the larger member of every twin pair of the original sequence.
///
/// The removal set is computed on the input before any deletion, so for the
/// chain 3, 5, 7 both 5 and 7 are removed.
pub fn kill_twins(seq: &PrimeSequence) -> PrimeSequence {
    let doomed: std::collections::BTreeSet<u64> =
        twin_pairs(seq).into_iter().map(|(_, hi)| hi).collect();
    let values = seq
        .values()
        .iter()
        .copied()
        .filter(|p| !doomed.contains(p))
        .collect();
    PrimeSequence {
        values,
        origin: SequenceOrigin::K2Filtered,
    }
}

/// Exact occurrence counts per gap value; the mode breaks ties toward the
/// smallest gap.
pub fn gap_histogram(g: &GapSequence) -> Result<GapHistogram> {
    if g.is_empty() {
        return Err(Error::TooShortInput { min: 1, got: 0 });
    }
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for &gap in g.gaps() {
        *counts.entry(gap).or_insert(0) += 1;
    }
    let max_count = counts.values().copied().max().unwrap_or(0);
    let mode = counts
        .iter()
        .find(|(_, &c)| c == max_count)
        .map(|(&g, _)| g)
        .unwrap_or(0);
    Ok(GapHistogram { counts, mode })
}

/// Sliding-window mean gap paired with ln of the window's central prime.
///
/// The window counts primes; a window of `w` primes spans `w - 1` gaps. The
/// output makes the prime-number-theorem drift (mean gap ~ ln p) visible.
pub fn gap_growth_diagnostic(seq: &PrimeSequence, window: usize) -> Result<Vec<GapGrowthRow>> {
    if window < 2 {
        return Err(Error::InvalidParameter("window must be >= 2".into()));
    }
    if window > seq.len() {
        return Err(Error::WindowTooSmall {
            interior: seq.len(),
            max_lag: window,
        });
    }
    let values = seq.values();
    let rows = values
        .windows(window)
        .map(|w| {
            let center = w[window / 2];
            GapGrowthRow {
                center_prime: center,
                mean_gap: (w[window - 1] - w[0]) as f64 / (window - 1) as f64,
                ln_center: (center as f64).ln(),
            }
        })
        .collect();
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent oracle: primes by trial division only.
    fn trial_division_primes(limit: u64) -> Vec<u64> {
        let mut out = Vec::new();
        for n in 2..=limit {
            let mut prime = n >= 2;
            let mut d = 2;
            while d * d <= n {
                if n % d == 0 {
                    prime = false;
                    break;
                }
                d += 1;
            }
            if prime {
                out.push(n);
            }
        }
        out
    }

    #[test]
    fn first_primes_by_definition() {
        let seq = first_n_primes(6).unwrap();
        assert_eq!(seq.values(), &[2, 3, 5, 7, 11, 13]);
        let seq = first_n_primes(1).unwrap();
        assert_eq!(seq.values(), &[2]);
    }

    #[test]
    fn ten_thousandth_prime_matches_trial_division() {
        // Frozen from the trial-division oracle below.
        let seq = first_n_primes(10_000).unwrap();
        assert_eq!(*seq.values().last().unwrap(), 104_729);
        let oracle = trial_division_primes(104_729);
        assert_eq!(oracle.len(), 10_000);
        assert_eq!(*oracle.last().unwrap(), 104_729);
    }

    #[test]
    fn count_limit_is_enforced() {
        let err = first_n_primes(DEFAULT_MAX_PRIME_COUNT + 1).unwrap_err();
        assert_eq!(err.name(), "resource-limit");
    }

    #[test]
    fn primes_up_to_small_limits() {
        assert_eq!(primes_up_to(10).unwrap().values(), &[2, 3, 5, 7]);
        assert_eq!(primes_up_to(2).unwrap().values(), &[2]);
        assert!(primes_up_to(1).is_err());
    }

    #[test]
    fn primes_up_to_20000_matches_oracle_count() {
        let seq = primes_up_to(20_000).unwrap();
        let oracle = trial_division_primes(20_000);
        assert_eq!(seq.len(), oracle.len());
    }

    #[test]
    fn sieve_equals_trial_division_up_to_1e5() {
        let seq = primes_up_to(100_000).unwrap();
        let oracle = trial_division_primes(100_000);
        assert_eq!(seq.values(), oracle.as_slice());
    }

    #[test]
    fn gaps_of_first_primes() {
        let seq = first_n_primes(6).unwrap();
        assert_eq!(gaps(&seq).unwrap().gaps(), &[1, 2, 2, 4, 2]);
        let two = PrimeSequence::new(vec![2, 3], SequenceOrigin::Full).unwrap();
        assert_eq!(gaps(&two).unwrap().gaps(), &[1]);
    }

    #[test]
    fn gaps_need_two_elements() {
        let one = PrimeSequence::new(vec![2], SequenceOrigin::Full).unwrap();
        assert_eq!(gaps(&one).unwrap_err().name(), "too-short-input");
    }

    #[test]
    fn gaps_telescope_to_last_prime() {
        let seq = first_n_primes(2000).unwrap();
        let g = gaps(&seq).unwrap();
        let total: u64 = g.gaps().iter().sum();
        assert_eq!(2 + total, *seq.values().last().unwrap());
        assert_eq!(*seq.values().last().unwrap(), 17_389);
    }

    #[test]
    fn twin_pairs_below_20() {
        let seq = primes_up_to(20).unwrap();
        assert_eq!(twin_pairs(&seq), vec![(3, 5), (5, 7), (11, 13), (17, 19)]);
        let two = PrimeSequence::new(vec![2, 3], SequenceOrigin::Full).unwrap();
        assert!(twin_pairs(&two).is_empty());
    }

    #[test]
    fn twin_count_matches_brute_force_below_20000() {
        let seq = primes_up_to(20_000).unwrap();
        let fast = twin_pairs(&seq).len();
        // Independent double loop over the oracle primes.
        let oracle = trial_division_primes(20_000);
        let mut brute = 0;
        for &p in &oracle {
            if oracle.binary_search(&(p + 2)).is_ok() {
                brute += 1;
            }
        }
        assert_eq!(fast, brute);
    }

    #[test]
    fn kill_twins_below_20() {
        let seq = primes_up_to(20).unwrap();
        let k2 = kill_twins(&seq);
        assert_eq!(k2.values(), &[2, 3, 11, 17]);
        assert_eq!(k2.origin(), SequenceOrigin::K2Filtered);
    }

    #[test]
    fn kill_twins_without_twins_is_identity() {
        let two = PrimeSequence::new(vec![2, 3], SequenceOrigin::Full).unwrap();
        assert_eq!(kill_twins(&two).values(), &[2, 3]);
    }

    #[test]
    fn k2_size_is_count_minus_twin_pairs() {
        let seq = first_n_primes(2000).unwrap();
        let pairs = twin_pairs(&seq).len();
        let k2 = kill_twins(&seq);
        assert_eq!(k2.len(), 2000 - pairs);
    }

    #[test]
    fn k2_keeps_no_larger_twin_member() {
        let seq = first_n_primes(2000).unwrap();
        let k2 = kill_twins(&seq);
        let removed: std::collections::BTreeSet<u64> =
            twin_pairs(&seq).into_iter().map(|(_, hi)| hi).collect();
        assert!(k2.values().iter().all(|p| !removed.contains(p)));
    }

    #[test]
    fn histogram_mode_examples() {
        let g = GapSequence::from_gaps(vec![1, 2, 2, 4, 2], 6).unwrap();
        assert_eq!(gap_histogram(&g).unwrap().mode(), 2);
        let g = GapSequence::from_gaps(vec![6], 2).unwrap();
        assert_eq!(gap_histogram(&g).unwrap().mode(), 6);
    }

    #[test]
    fn histogram_tie_breaks_to_smallest_gap() {
        let g = GapSequence::from_gaps(vec![4, 2, 4, 2], 5).unwrap();
        assert_eq!(gap_histogram(&g).unwrap().mode(), 2);
    }

    #[test]
    fn histogram_of_first_10000_primes_peaks_at_6() {
        let seq = first_n_primes(10_000).unwrap();
        let hist = gap_histogram(&gaps(&seq).unwrap()).unwrap();
        assert_eq!(hist.mode(), 6);
    }

    #[test]
    fn gap_growth_on_constant_gap_input() {
        // An arithmetic progression of primes: constant gap 6.
        let seq = PrimeSequence::new(vec![5, 11, 17, 23, 29], SequenceOrigin::Full).unwrap();
        let rows = gap_growth_diagnostic(&seq, 3).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| (r.mean_gap - 6.0).abs() < 1e-12));
    }

    #[test]
    fn gap_growth_full_window_is_single_row() {
        let seq = first_n_primes(100).unwrap();
        let rows = gap_growth_diagnostic(&seq, 100).unwrap();
        assert_eq!(rows.len(), 1);
        let first = seq.values()[0] as f64;
        let last = *seq.values().last().unwrap() as f64;
        assert!((rows[0].mean_gap - (last - first) / 99.0).abs() < 1e-12);
    }

    #[test]
    fn gap_growth_window_too_large() {
        let seq = first_n_primes(10).unwrap();
        assert!(gap_growth_diagnostic(&seq, 11).is_err());
    }

    #[test]
    fn gap_growth_ratio_drifts_toward_one() {
        // Diagnostic, not a theorem at this scale: the ratio should move
        // toward 1 between the start and the end of the first 10000 primes.
        let seq = first_n_primes(10_000).unwrap();
        let rows = gap_growth_diagnostic(&seq, 500).unwrap();
        let first = rows.first().unwrap();
        let last = rows.last().unwrap();
        let r0 = first.mean_gap / first.ln_center;
        let r1 = last.mean_gap / last.ln_center;
        assert!((r1 - 1.0).abs() < (r0 - 1.0).abs() + 0.05);
    }

    proptest! {
        #[test]
        fn gaps_round_trip(count in 2usize..400) {
            let seq = first_n_primes(count).unwrap();
            let g = gaps(&seq).unwrap();
            let mut rebuilt = vec![seq.values()[0]];
            for &gap in g.gaps() {
                rebuilt.push(rebuilt.last().unwrap() + gap);
            }
            prop_assert_eq!(rebuilt.as_slice(), seq.values());
        }

        #[test]
        fn histogram_counts_sum_and_permutation_stability(
            mut gaps_vec in proptest::collection::vec(1u64..50, 1..200),
            seed in 0u64..1000,
        ) {
            let g = GapSequence::from_gaps(gaps_vec.clone(), gaps_vec.len() + 1).unwrap();
            let h = gap_histogram(&g).unwrap();
            let total: u64 = h.counts().values().sum();
            prop_assert_eq!(total, gaps_vec.len() as u64);
            // Deterministic shuffle: rotate by seed.
            let k = (seed as usize) % gaps_vec.len();
            gaps_vec.rotate_left(k);
            let g2 = GapSequence::from_gaps(gaps_vec.clone(), gaps_vec.len() + 1).unwrap();
            let h2 = gap_histogram(&g2).unwrap();
            prop_assert_eq!(h.counts(), h2.counts());
            prop_assert_eq!(h.mode(), h2.mode());
        }
    }
}
