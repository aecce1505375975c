//! ±1 telegraph signals: from change-point sets, from the stochastic model
//! with events at n*T + zeta, and from threshold crossings of trajectories.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Signal polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// A ±1 signal on a contiguous integer grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TelegraphSignal {
    start_index: i64,
    values: Vec<i8>,
    change_points: Vec<i64>,
}

impl TelegraphSignal {
    fn from_values(start_index: i64, values: Vec<i8>) -> Self {
        let change_points = values
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] != w[1])
            .map(|(i, _)| start_index + i as i64 + 1)
            .collect();
        Self {
            start_index,
            values,
            change_points,
        }
    }

    /// First defined grid point.
    pub fn start_index(&self) -> i64 {
        self.start_index
    }

    /// Last defined grid point (inclusive).
    pub fn end_index(&self) -> i64 {
        self.start_index + self.values.len() as i64 - 1
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    /// Grid coordinates where the sign differs from its predecessor.
    pub fn change_points(&self) -> &[i64] {
        &self.change_points
    }

    pub fn value_at(&self, n: i64) -> Option<i8> {
        if n < self.start_index || n > self.end_index() {
            return None;
        }
        Some(self.values[(n - self.start_index) as usize])
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Same signal with every value negated.
    pub fn negated(&self) -> TelegraphSignal {
        TelegraphSignal {
            start_index: self.start_index,
            values: self.values.iter().map(|v| -v).collect(),
            change_points: self.change_points.clone(),
        }
    }
}

/// Parameters of the periodically driven model telegraph signal.
///
/// Events happen at k*period + zeta with zeta drawn once per realization,
/// uniform on [0, period); each event flips the sign with some probability.
/// `persistence` is the q of the analytic autocorrelation (see module
/// `correlation`); the matching generator flip probability is 1 - q.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelTelegraphParams {
    pub period: f64,
    pub persistence: f64,
    pub length: usize,
    pub grid_step: f64,
}

impl Default for ModelTelegraphParams {
    fn default() -> Self {
        Self {
            period: 10.0,
            persistence: 0.25,
            length: 400,
            grid_step: 1.0,
        }
    }
}

impl ModelTelegraphParams {
    fn validate(&self) -> Result<()> {
        if !self.period.is_finite() || self.period <= 0.0 {
            return Err(Error::InvalidParameter("period must be > 0".into()));
        }
        if !(0.0..1.0).contains(&self.persistence) {
            return Err(Error::InvalidParameter(
                "persistence must lie in [0, 1)".into(),
            ));
        }
        if !self.grid_step.is_finite() || self.grid_step <= 0.0 {
            return Err(Error::InvalidParameter("grid step must be > 0".into()));
        }
        if self.length == 0 {
            return Err(Error::InvalidParameter("length must be >= 1".into()));
        }
        Ok(())
    }
}

/// Builds v(n) = initial_sign * (-1)^(number of points <= n) on the inclusive
/// domain [domain_start, domain_end].
///
/// A flip takes effect at the change-point coordinate itself; points outside
/// the domain still contribute to the parity count when they are <= n.
pub fn telegraph_from_changepoints(
    points: &[i64],
    domain_start: i64,
    domain_end: i64,
    initial_sign: Sign,
) -> Result<TelegraphSignal> {
    if domain_start >= domain_end {
        return Err(Error::InvalidParameter(
            "domain_start must be < domain_end".into(),
        ));
    }
    if let Some(i) = points.windows(2).position(|w| w[0] >= w[1]) {
        return Err(Error::NonMonotone { index: i + 1 });
    }

    let below = points.partition_point(|&s| s <= domain_start);
    let mut sign = if below % 2 == 0 {
        initial_sign
    } else {
        initial_sign.flipped()
    };
    let mut next = below;
    let mut values = Vec::with_capacity((domain_end - domain_start + 1) as usize);
    for n in domain_start..=domain_end {
        if n > domain_start {
            let mut flips = 0;
            while next < points.len() && points[next] <= n {
                flips += 1;
                next += 1;
            }
            if flips % 2 == 1 {
                sign = sign.flipped();
            }
        }
        values.push(sign.as_i8());
    }
    Ok(TelegraphSignal::from_values(domain_start, values))
}

/// One realization of the model telegraph: draws the phase from the seeded
/// generator, then flips at each event with probability `flip_probability`.
///
/// Identical seeds give bit-identical signals.
pub fn simulate_model_telegraph(
    params: &ModelTelegraphParams,
    flip_probability: f64,
    seed: u64,
) -> Result<TelegraphSignal> {
    params.validate()?;
    check_flip_probability(flip_probability)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let phase = rng.random::<f64>() * params.period;
    model_telegraph_from_rng(params, flip_probability, phase, &mut rng)
}

/// Model telegraph with an explicitly chosen phase; flip decisions still come
/// from the seeded generator.
pub fn model_telegraph_with_phase(
    params: &ModelTelegraphParams,
    flip_probability: f64,
    phase: f64,
    seed: u64,
) -> Result<TelegraphSignal> {
    params.validate()?;
    check_flip_probability(flip_probability)?;
    if !(0.0..=params.period).contains(&phase) {
        return Err(Error::InvalidParameter(
            "phase must lie in [0, period]".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    model_telegraph_from_rng(params, flip_probability, phase, &mut rng)
}

fn check_flip_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(
            "flip probability must lie in [0, 1]".into(),
        ));
    }
    Ok(())
}

fn model_telegraph_from_rng(
    params: &ModelTelegraphParams,
    flip_probability: f64,
    phase: f64,
    rng: &mut ChaCha8Rng,
) -> Result<TelegraphSignal> {
    let horizon = (params.length - 1) as f64 * params.grid_step;
    let mut flip_times = Vec::new();
    let mut k = 0u64;
    loop {
        let t = k as f64 * params.period + phase;
        if t > horizon {
            break;
        }
        if rng.random::<f64>() < flip_probability {
            flip_times.push(t);
        }
        k += 1;
    }
    sample_flip_times_onto_grid(
        &flip_times,
        0.0,
        params.grid_step,
        params.length,
        Sign::Plus,
    )
}

/// Telegraph signal flipping at the given crossing times, sampled onto a
/// uniform grid over `horizon`; a grid point takes the sign valid at its
/// time coordinate (a flip is effective at the first grid point >= its time).
pub fn telegraph_from_crossings(
    times: &[f64],
    horizon: (f64, f64),
    grid_step: f64,
    initial_sign: Sign,
) -> Result<TelegraphSignal> {
    let (t0, t1) = horizon;
    if !grid_step.is_finite() || grid_step <= 0.0 {
        return Err(Error::InvalidParameter("grid step must be > 0".into()));
    }
    if !t0.is_finite() || !t1.is_finite() || t1 <= t0 {
        return Err(Error::InvalidParameter(
            "horizon end must exceed horizon start".into(),
        ));
    }
    if let Some(i) = times.windows(2).position(|w| w[0] >= w[1]) {
        return Err(Error::NonMonotone { index: i + 1 });
    }
    if times.iter().any(|&t| t < t0 || t > t1) {
        return Err(Error::InvalidParameter(
            "crossing time outside horizon".into(),
        ));
    }
    let length = ((t1 - t0) / grid_step).floor() as usize + 1;
    let shifted: Vec<f64> = times.iter().map(|&t| t - t0).collect();
    sample_flip_times_onto_grid(&shifted, 0.0, grid_step, length, initial_sign)
}

fn sample_flip_times_onto_grid(
    flip_times: &[f64],
    grid_origin: f64,
    grid_step: f64,
    length: usize,
    initial_sign: Sign,
) -> Result<TelegraphSignal> {
    let mut values = Vec::with_capacity(length);
    let mut sign = initial_sign;
    let mut next = 0;
    for i in 0..length {
        let t = grid_origin + i as f64 * grid_step;
        let mut flips = 0;
        while next < flip_times.len() && flip_times[next] <= t {
            flips += 1;
            next += 1;
        }
        if flips % 2 == 1 {
            sign = sign.flipped();
        }
        values.push(sign.as_i8());
    }
    Ok(TelegraphSignal::from_values(0, values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lnseq::ln_sequence;
    use crate::primes::{first_n_primes, gaps};
    use proptest::prelude::*;

    #[test]
    fn two_changepoints_flip_convention() {
        let sig = telegraph_from_changepoints(&[7, 14], 2, 16, Sign::Plus).unwrap();
        for n in 2..=6 {
            assert_eq!(sig.value_at(n), Some(1));
        }
        for n in 7..=13 {
            assert_eq!(sig.value_at(n), Some(-1));
        }
        for n in 14..=16 {
            assert_eq!(sig.value_at(n), Some(1));
        }
        assert_eq!(sig.change_points(), &[7, 14]);
    }

    #[test]
    fn no_points_means_constant() {
        let sig = telegraph_from_changepoints(&[], 2, 10, Sign::Plus).unwrap();
        assert!(sig.values().iter().all(|&v| v == 1));
        assert!(sig.change_points().is_empty());
    }

    #[test]
    fn points_below_domain_shift_initial_parity() {
        let sig = telegraph_from_changepoints(&[1], 2, 5, Sign::Plus).unwrap();
        assert!(sig.values().iter().all(|&v| v == -1));
    }

    #[test]
    fn non_monotone_points_rejected() {
        let err = telegraph_from_changepoints(&[5, 5], 2, 10, Sign::Plus).unwrap_err();
        assert_eq!(err.name(), "non-monotone");
    }

    #[test]
    fn lnseq_signal_defined_everywhere_with_full_flip_count() {
        let seq = first_n_primes(10_000).unwrap();
        let ln = ln_sequence(&gaps(&seq).unwrap(), 10.0).unwrap();
        let points: Vec<i64> = ln.values().iter().map(|&v| v as i64).collect();
        let sig = telegraph_from_changepoints(&points, 2, 100_000, Sign::Plus).unwrap();
        assert_eq!(sig.len(), 100_000 - 2 + 1);
        let expected = points.iter().filter(|&&p| p <= 100_000).count();
        assert_eq!(sig.change_points().len(), expected);
    }

    #[test]
    fn zero_flip_probability_is_constant() {
        let params = ModelTelegraphParams {
            period: 10.0,
            persistence: 0.0,
            length: 200,
            grid_step: 1.0,
        };
        let sig = simulate_model_telegraph(&params, 0.0, 7).unwrap();
        assert!(sig.values().iter().all(|&v| v == 1));
    }

    #[test]
    fn certain_flips_with_zero_phase_make_a_square_wave() {
        let params = ModelTelegraphParams {
            period: 10.0,
            persistence: 0.0,
            length: 60,
            grid_step: 1.0,
        };
        let sig = model_telegraph_with_phase(&params, 1.0, 0.0, 3).unwrap();
        // Events at 0, 10, 20, ...: runs of ten samples with alternating sign.
        for (i, &v) in sig.values().iter().enumerate() {
            let expected = if (i / 10) % 2 == 0 { -1 } else { 1 };
            assert_eq!(v, expected, "sample {i}");
        }
    }

    #[test]
    fn same_seed_is_bit_identical() {
        let params = ModelTelegraphParams::default();
        let a = simulate_model_telegraph(&params, 0.6, 42).unwrap();
        let b = simulate_model_telegraph(&params, 0.6, 42).unwrap();
        assert_eq!(a, b);
        let c = simulate_model_telegraph(&params, 0.6, 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn crossings_empty_is_constant() {
        let sig = telegraph_from_crossings(&[], (0.0, 5.0), 0.5, Sign::Plus).unwrap();
        assert!(sig.values().iter().all(|&v| v == 1));
    }

    #[test]
    fn crossings_sample_onto_grid() {
        let sig = telegraph_from_crossings(&[1.0, 2.0], (0.0, 3.0), 0.5, Sign::Plus).unwrap();
        assert_eq!(sig.values(), &[1, 1, -1, -1, 1, 1, 1]);
    }

    #[test]
    fn crossings_must_increase() {
        let err = telegraph_from_crossings(&[2.0, 1.0], (0.0, 3.0), 0.5, Sign::Plus).unwrap_err();
        assert_eq!(err.name(), "non-monotone");
    }

    proptest! {
        #[test]
        fn parity_consistency(
            raw_points in proptest::collection::btree_set(-20i64..120, 0..30),
            start in -5i64..5,
            len in 2i64..120,
            plus in proptest::bool::ANY,
        ) {
            let points: Vec<i64> = raw_points.into_iter().collect();
            let initial = if plus { Sign::Plus } else { Sign::Minus };
            let end = start + len;
            let sig = telegraph_from_changepoints(&points, start, end, initial).unwrap();
            for n in start..=end {
                let count = points.iter().filter(|&&s| s <= n).count();
                let expected = if count % 2 == 0 {
                    initial.as_i8()
                } else {
                    -initial.as_i8()
                };
                prop_assert_eq!(sig.value_at(n), Some(expected));
            }
        }
    }
}
