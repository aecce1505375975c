//! Windowed autocorrelation of telegraph signals, the analytic model curve,
//! rescaling, period estimation, and fundamental-period recovery.

use crate::error::{Error, Result};
use crate::spectral;
use crate::telegraph::{simulate_model_telegraph, ModelTelegraphParams, TelegraphSignal};

/// Numerical slack allowed above |C| = 1 for a normalized series.
pub const NORMALIZATION_SLACK: f64 = 1e-9;

/// Lag-indexed autocorrelation values; index i is lag i in grid units.
#[derive(Debug, Clone, PartialEq)]
pub struct AutocorrelationSeries {
    values: Vec<f64>,
    window: (i64, i64),
    variance_at_zero: f64,
    normalized: bool,
}

impl AutocorrelationSeries {
    /// Builds a series from raw values, checking the normalization invariant.
    pub fn from_values(
        values: Vec<f64>,
        window: (i64, i64),
        variance_at_zero: f64,
        normalized: bool,
    ) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::TooShortInput { min: 1, got: 0 });
        }
        if normalized {
            if (values[0] - 1.0).abs() > NORMALIZATION_SLACK {
                return Err(Error::InvalidParameter(
                    "normalized series must start at 1".into(),
                ));
            }
            if values.iter().any(|v| v.abs() > 1.0 + NORMALIZATION_SLACK) {
                return Err(Error::InvalidParameter(
                    "normalized series must stay within [-1, 1]".into(),
                ));
            }
        }
        Ok(Self {
            values,
            window,
            variance_at_zero,
            normalized,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max_lag(&self) -> usize {
        self.values.len() - 1
    }

    /// Averaging interval the series was computed on.
    pub fn window(&self) -> (i64, i64) {
        self.window
    }

    /// Unnormalized covariance at lag zero.
    pub fn variance_at_zero(&self) -> f64 {
        self.variance_at_zero
    }

    pub fn normalized(&self) -> bool {
        self.normalized
    }
}

/// Ensemble-averaged autocorrelation with per-lag standard errors of the
/// ensemble mean.
#[derive(Debug, Clone)]
pub struct EnsembleAcf {
    pub acf: AutocorrelationSeries,
    pub std_error: Vec<f64>,
}

/// Windowed autocorrelation of a ±1 signal, normalized to C(0) = 1.
///
/// Averages run over the common position set n in (window_start,
/// window_end - max_lag], so every lag uses the same count and both n and
/// n + tau stay strictly inside the open window. Per-lag means of v(n) and
/// v(n + tau) over that set are subtracted before normalizing by the lag-zero
/// covariance.
pub fn autocorrelation(
    signal: &TelegraphSignal,
    window_start: i64,
    window_end: i64,
    max_lag: usize,
) -> Result<AutocorrelationSeries> {
    if window_start + 1 < signal.start_index() || window_end - 1 > signal.end_index() {
        return Err(Error::InvalidParameter(format!(
            "window ({window_start}, {window_end}) not within signal domain [{}, {}]",
            signal.start_index(),
            signal.end_index()
        )));
    }
    if window_end - window_start < 2 {
        return Err(Error::WindowTooSmall {
            interior: 0,
            max_lag,
        });
    }
    let interior = (window_end - window_start - 1) as usize;
    if 2 * max_lag >= interior {
        return Err(Error::WindowTooSmall { interior, max_lag });
    }

    let base = (window_start + 1 - signal.start_index()) as usize;
    let slice = &signal.values()[base..base + interior];
    let count = interior - max_lag;

    let sum_lead: i64 = slice[..count].iter().map(|&v| v as i64).sum();
    let mean_lead = sum_lead as f64 / count as f64;

    let mut values = Vec::with_capacity(max_lag + 1);
    for tau in 0..=max_lag {
        let mut prod: i64 = 0;
        let mut sum_lag: i64 = 0;
        for i in 0..count {
            let w = slice[i + tau] as i64;
            prod += slice[i] as i64 * w;
            sum_lag += w;
        }
        let mean_lag = sum_lag as f64 / count as f64;
        values.push(prod as f64 / count as f64 - mean_lead * mean_lag);
    }

    let c0 = values[0];
    if c0 <= 1e-12 {
        return Err(Error::ZeroVariance(window_start, window_end));
    }
    for v in &mut values {
        *v /= c0;
    }
    AutocorrelationSeries::from_values(values, (window_start, window_end), c0, true)
}

/// Analytic autocorrelation of the model telegraph signal.
///
/// With n chosen so that (n-1)T <= tau < nT, returns
/// (n - tau/T)(2q-1)^(n-1) + (tau/T - (n-1))(2q-1)^n.
pub fn model_autocorrelation(q: f64, period: f64, tau: f64) -> f64 {
    let n = (tau / period).floor() as i32 + 1;
    let ratio = tau / period;
    let r = 2.0 * q - 1.0;
    (n as f64 - ratio) * r.powi(n - 1) + (ratio - (n - 1) as f64) * r.powi(n)
}

/// Monte Carlo estimate of the model autocorrelation: averages per-realization
/// products v(n)v(n+tau) over positions and realizations, normalized at lag 0.
///
/// Realization r uses seed `seed + r`, so the ensemble is independent of any
/// scheduling order.
pub fn ensemble_model_acf(
    params: &ModelTelegraphParams,
    flip_probability: f64,
    realizations: usize,
    max_lag: usize,
    seed: u64,
) -> Result<EnsembleAcf> {
    if realizations < 100 {
        return Err(Error::InvalidParameter(
            "need at least 100 realizations".into(),
        ));
    }
    if max_lag >= params.length {
        return Err(Error::WindowTooSmall {
            interior: params.length,
            max_lag,
        });
    }

    let mut sum = vec![0.0f64; max_lag + 1];
    let mut sum_sq = vec![0.0f64; max_lag + 1];
    for r in 0..realizations {
        let sig = simulate_model_telegraph(params, flip_probability, seed.wrapping_add(r as u64))?;
        let vals = sig.values();
        for (tau, (s, s2)) in sum.iter_mut().zip(sum_sq.iter_mut()).enumerate() {
            let positions = vals.len() - tau;
            let mut acc: i64 = 0;
            for i in 0..positions {
                acc += (vals[i] * vals[i + tau]) as i64;
            }
            let c = acc as f64 / positions as f64;
            *s += c;
            *s2 += c * c;
        }
    }

    let n = realizations as f64;
    let means: Vec<f64> = sum.iter().map(|s| s / n).collect();
    let std_error: Vec<f64> = means
        .iter()
        .zip(sum_sq.iter())
        .map(|(&m, &s2)| {
            let var = ((s2 / n - m * m) * n / (n - 1.0)).max(0.0);
            (var / n).sqrt()
        })
        .collect();

    let c0 = means[0];
    let values: Vec<f64> = means.iter().map(|m| m / c0).collect();
    let acf = AutocorrelationSeries::from_values(values, (-1, params.length as i64), c0, true)?;
    Ok(EnsembleAcf { acf, std_error })
}

/// Stretches the lag axis by `lag_factor` (with linear re-interpolation onto
/// the integer grid) and multiplies values by `amplitude_factor`.
pub fn rescale(
    series: &AutocorrelationSeries,
    lag_factor: f64,
    amplitude_factor: f64,
) -> Result<AutocorrelationSeries> {
    if !(lag_factor.is_finite()
        && lag_factor > 0.0
        && amplitude_factor.is_finite()
        && amplitude_factor > 0.0)
    {
        return Err(Error::InvalidParameter(
            "rescale factors must be > 0".into(),
        ));
    }
    let src = series.values();
    let new_len = ((src.len() - 1) as f64 * lag_factor).floor() as usize + 1;
    let mut values = Vec::with_capacity(new_len);
    for j in 0..new_len {
        let pos = j as f64 / lag_factor;
        let i = pos.floor() as usize;
        let v = if i + 1 < src.len() {
            let frac = pos - i as f64;
            src[i] * (1.0 - frac) + src[i + 1] * frac
        } else {
            src[src.len() - 1]
        };
        values.push(amplitude_factor * v);
    }
    AutocorrelationSeries::from_values(
        values,
        series.window(),
        amplitude_factor * series.variance_at_zero(),
        series.normalized() && amplitude_factor == 1.0,
    )
}

/// How the oscillation half-period was read off the series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeriodMethod {
    /// Lag of the first local minimum.
    FirstMinimum,
    /// Half the period of the dominant spectral peak.
    Spectral,
}

impl std::fmt::Display for PeriodMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PeriodMethod::FirstMinimum => write!(f, "first-minimum"),
            PeriodMethod::Spectral => write!(f, "spectral"),
        }
    }
}

/// Estimated oscillation half-period plus the recovered fundamental period.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodEstimate {
    /// Half-period of the autocorrelation oscillation, in lag units.
    pub half_period: f64,
    /// At least one lag unit.
    pub uncertainty: f64,
    pub method: PeriodMethod,
    /// exp(half_period / scale_used); meaningful for log-gap signals.
    pub fundamental: f64,
    pub scale_used: f64,
}

/// Centered moving average with symmetric shrinking at the edges.
fn smooth(values: &[f64], window: usize) -> Vec<f64> {
    if window <= 1 {
        return values.to_vec();
    }
    let half = window / 2;
    (0..values.len())
        .map(|i| {
            let k = half.min(i).min(values.len() - 1 - i);
            let lo = i - k;
            let hi = i + k;
            values[lo..=hi].iter().sum::<f64>() / (hi - lo + 1) as f64
        })
        .collect()
}

/// First index that is the bottom of a valley of depth > `prominence`: the
/// running maximum on the left exceeds it by more than `prominence`, and the
/// series rises above it by more than `prominence` again before dipping any
/// lower.
fn first_minimum_lag(values: &[f64], prominence: f64) -> Option<usize> {
    let mut left_max = values[0];
    for k in 1..values.len() {
        if values[k] < values[k - 1] && left_max - values[k] > prominence {
            let mut r = k + 1;
            while r < values.len() && values[r] >= values[k] {
                if values[r] - values[k] > prominence {
                    return Some(k);
                }
                r += 1;
            }
        }
        left_max = left_max.max(values[k]);
    }
    None
}

/// Reads the oscillation half-period off an autocorrelation series.
///
/// The first-minimum method smooths with a centered moving average (odd
/// window; 1 disables smoothing) and takes the first local minimum whose
/// depth below both neighbors exceeds `prominence`. The spectral method
/// halves the dominant oscillation period. `scale` feeds the recovered
/// fundamental period exp(half_period / scale).
pub fn estimate_period(
    series: &AutocorrelationSeries,
    method: PeriodMethod,
    smoothing_window: usize,
    prominence: f64,
    scale: f64,
) -> Result<PeriodEstimate> {
    if smoothing_window.is_multiple_of(2) {
        return Err(Error::InvalidParameter(
            "smoothing window must be odd".into(),
        ));
    }
    if prominence < 0.0 {
        return Err(Error::InvalidParameter("prominence must be >= 0".into()));
    }
    if !scale.is_finite() || scale <= 0.0 {
        return Err(Error::InvalidParameter("scale must be > 0".into()));
    }
    let (half_period, uncertainty) = match method {
        PeriodMethod::FirstMinimum => {
            let smoothed = smooth(series.values(), smoothing_window);
            let lag =
                first_minimum_lag(&smoothed, prominence).ok_or(Error::NoMinimum { prominence })?;
            (lag as f64, 1.0)
        }
        PeriodMethod::Spectral => {
            let period = spectral::dominant_period(series.values(), 1.0)?;
            let n = series.values().len() as f64;
            (period / 2.0, (period * period / (2.0 * n) / 2.0).max(1.0))
        }
    };
    Ok(PeriodEstimate {
        half_period,
        uncertainty,
        method,
        fundamental: recover_fundamental_period(half_period, scale),
        scale_used: scale,
    })
}

/// exp(half_period / scale): inverts the log-gap transform.
pub fn recover_fundamental_period(half_period: f64, scale: f64) -> f64 {
    (half_period / scale).exp()
}

/// Largest lag k such that a least-squares line through lags 0..=k has a
/// negative slope and a coefficient of determination >= `r2_threshold`.
pub fn linear_decay_endpoint(series: &AutocorrelationSeries, r2_threshold: f64) -> Result<usize> {
    if !(0.0..1.0).contains(&r2_threshold) || r2_threshold == 0.0 {
        return Err(Error::InvalidParameter(
            "r2 threshold must lie in (0, 1)".into(),
        ));
    }
    if !series.normalized() {
        return Err(Error::InvalidParameter(
            "linear-decay endpoint needs a normalized series".into(),
        ));
    }
    let values = series.values();
    let mut best = None;
    for k in 2..values.len() {
        let y = &values[..=k];
        let n = y.len() as f64;
        let sx = (k * (k + 1)) as f64 / 2.0;
        let sxx = (k * (k + 1) * (2 * k + 1)) as f64 / 6.0;
        let sy: f64 = y.iter().sum();
        let sxy: f64 = y.iter().enumerate().map(|(x, &v)| x as f64 * v).sum();
        let denom = n * sxx - sx * sx;
        let slope = (n * sxy - sx * sy) / denom;
        let intercept = (sy - slope * sx) / n;
        let mean = sy / n;
        let ss_tot: f64 = y.iter().map(|&v| (v - mean).powi(2)).sum();
        let ss_res: f64 = y
            .iter()
            .enumerate()
            .map(|(x, &v)| (v - intercept - slope * x as f64).powi(2))
            .sum();
        if ss_tot == 0.0 {
            continue;
        }
        let r2 = 1.0 - ss_res / ss_tot;
        if slope < 0.0 && r2 >= r2_threshold {
            best = Some(k);
        }
    }
    best.ok_or(Error::NoLinearSegment {
        threshold: r2_threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::telegraph::{telegraph_from_changepoints, Sign};
    use proptest::prelude::*;

    /// Independent oracle: literal double loop over the same position set.
    fn naive_acf(values: &[i8], max_lag: usize) -> Option<Vec<f64>> {
        let count = values.len() - max_lag;
        let mut out = Vec::new();
        for tau in 0..=max_lag {
            let mut prod = 0.0;
            let mut lead = 0.0;
            let mut lag = 0.0;
            for i in 0..count {
                prod += values[i] as f64 * values[i + tau] as f64;
                lead += values[i] as f64;
                lag += values[i + tau] as f64;
            }
            let n = count as f64;
            out.push(prod / n - (lead / n) * (lag / n));
        }
        let c0 = out[0];
        if c0 <= 1e-12 {
            return None;
        }
        Some(out.into_iter().map(|v| v / c0).collect())
    }

    fn signal_from(values: Vec<i8>) -> TelegraphSignal {
        let points: Vec<i64> = values
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] != w[1])
            .map(|(i, _)| i as i64 + 1)
            .collect();
        let initial = if values[0] == 1 {
            Sign::Plus
        } else {
            Sign::Minus
        };
        let sig =
            telegraph_from_changepoints(&points, 0, values.len() as i64 - 1, initial).unwrap();
        assert_eq!(sig.values(), values.as_slice());
        sig
    }

    fn full_window_acf(sig: &TelegraphSignal, max_lag: usize) -> Result<AutocorrelationSeries> {
        autocorrelation(sig, sig.start_index() - 1, sig.end_index() + 1, max_lag)
    }

    #[test]
    fn alternating_signal_is_perfectly_anticorrelated() {
        let values: Vec<i8> = (0..20).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
        let sig = signal_from(values);
        // Interior length 20, max_lag 4: the common range holds 16 samples.
        let acf = full_window_acf(&sig, 4).unwrap();
        for (tau, &c) in acf.values().iter().enumerate() {
            let expected = if tau % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(c, expected, "lag {tau}");
        }
    }

    #[test]
    fn constant_signal_has_zero_variance() {
        let sig = telegraph_from_changepoints(&[], 0, 30, Sign::Plus).unwrap();
        let err = full_window_acf(&sig, 4).unwrap_err();
        assert_eq!(err.name(), "zero-variance");
    }

    #[test]
    fn square_wave_quarter_and_half_period() {
        // +1,+1,-1,-1 repeated over full periods; frozen from the naive oracle.
        let values: Vec<i8> = (0..24).map(|i| if i % 4 < 2 { 1 } else { -1 }).collect();
        let sig = signal_from(values.clone());
        let acf = full_window_acf(&sig, 4).unwrap();
        let oracle = naive_acf(&values, 4).unwrap();
        assert!((acf.values()[1] - 0.0).abs() < 1e-12);
        assert!((acf.values()[2] - -1.0).abs() < 1e-12);
        for (a, b) in acf.values().iter().zip(oracle.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn window_too_small_is_rejected() {
        let sig = telegraph_from_changepoints(&[3], 0, 9, Sign::Plus).unwrap();
        let err = full_window_acf(&sig, 5).unwrap_err();
        assert_eq!(err.name(), "window-too-small");
    }

    #[test]
    fn window_must_sit_inside_domain() {
        let sig = telegraph_from_changepoints(&[3], 0, 9, Sign::Plus).unwrap();
        assert!(autocorrelation(&sig, -5, 20, 2).is_err());
    }

    #[test]
    fn model_acf_is_one_at_zero_lag() {
        for q in [0.0, 0.1, 0.25, 0.5, 0.9] {
            assert_eq!(model_autocorrelation(q, 10.0, 0.0), 1.0);
        }
    }

    #[test]
    fn model_acf_at_half_persistence_decays_linearly_then_vanishes() {
        let t = 10.0;
        for i in 0..10 {
            let tau = i as f64;
            assert!((model_autocorrelation(0.5, t, tau) - (1.0 - tau / t)).abs() < 1e-12);
        }
        for i in 10..40 {
            assert_eq!(model_autocorrelation(0.5, t, i as f64), 0.0);
        }
    }

    #[test]
    fn model_acf_quarter_persistence_at_one_period() {
        assert!((model_autocorrelation(0.25, 10.0, 10.0) - -0.5).abs() < 1e-12);
    }

    #[test]
    fn model_acf_is_continuous_at_knots() {
        for &q in &[0.0, 0.25, 0.5, 0.75] {
            let r: f64 = 2.0 * q - 1.0;
            for n in 1..=6 {
                let t = 7.3;
                let tau = n as f64 * t;
                // Closed forms on each side of the knot.
                let left =
                    (n as f64 - tau / t) * r.powi(n - 1) + (tau / t - (n - 1) as f64) * r.powi(n);
                let right =
                    ((n + 1) as f64 - tau / t) * r.powi(n) + (tau / t - n as f64) * r.powi(n + 1);
                assert!((left - right).abs() <= 1e-12);
                assert!((model_autocorrelation(q, t, tau) - r.powi(n)).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn ensemble_with_no_flips_is_all_ones() {
        let params = ModelTelegraphParams {
            period: 10.0,
            persistence: 0.0,
            length: 100,
            grid_step: 1.0,
        };
        let ens = ensemble_model_acf(&params, 0.0, 200, 20, 1).unwrap();
        assert!(ens.acf.values().iter().all(|&c| c == 1.0));
        assert!(ens.std_error.iter().all(|&e| e == 0.0));
    }

    fn assert_ensemble_matches_model(q: f64, seed: u64) {
        let params = ModelTelegraphParams {
            period: 10.0,
            persistence: q,
            length: 300,
            grid_step: 1.0,
        };
        let ens = ensemble_model_acf(&params, 1.0 - q, 2000, 40, seed).unwrap();
        for (tau, (&c, &se)) in ens
            .acf
            .values()
            .iter()
            .zip(ens.std_error.iter())
            .enumerate()
        {
            let analytic = model_autocorrelation(q, 10.0, tau as f64);
            let diff = (c - analytic).abs();
            assert!(
                diff <= (3.0 * se).max(1e-12),
                "q={q} lag={tau}: diff {diff} > 3se {}",
                3.0 * se
            );
        }
    }

    #[test]
    fn ensemble_matches_model_for_certain_flips() {
        assert_ensemble_matches_model(0.0, 11);
    }

    #[test]
    fn ensemble_matches_model_for_quarter_persistence() {
        assert_ensemble_matches_model(0.25, 12);
    }

    #[test]
    fn rescale_identity() {
        let series =
            AutocorrelationSeries::from_values(vec![1.0, 0.5, -0.2], (0, 10), 1.0, true).unwrap();
        let out = rescale(&series, 1.0, 1.0).unwrap();
        assert_eq!(out.values(), series.values());
        assert!(out.normalized());
    }

    #[test]
    fn rescale_moves_the_minimum() {
        let values: Vec<f64> = (0..=20)
            .map(|i| (std::f64::consts::PI * i as f64 / 5.0).cos())
            .collect();
        let series = AutocorrelationSeries::from_values(values, (0, 50), 1.0, true).unwrap();
        let min_before = first_minimum_lag(series.values(), 0.01).unwrap();
        assert_eq!(min_before, 5);
        let out = rescale(&series, 2.0, 1.0).unwrap();
        let min_after = first_minimum_lag(out.values(), 0.01).unwrap();
        assert_eq!(min_after, 10);
    }

    #[test]
    fn rescale_clears_normalized_on_amplitude_change() {
        let series =
            AutocorrelationSeries::from_values(vec![1.0, 0.5, -0.2], (0, 10), 1.0, true).unwrap();
        let out = rescale(&series, 1.0, 0.5).unwrap();
        assert!(!out.normalized());
        assert!((out.values()[1] - 0.25).abs() < 1e-15);
    }

    fn model_series(q: f64, period: f64, max_lag: usize) -> AutocorrelationSeries {
        let values: Vec<f64> = (0..=max_lag)
            .map(|tau| model_autocorrelation(q, period, tau as f64))
            .collect();
        AutocorrelationSeries::from_values(values, (0, max_lag as i64), 1.0, true).unwrap()
    }

    #[test]
    fn triangle_wave_period_both_methods() {
        let series = model_series(0.0, 10.0, 200);
        let fm = estimate_period(&series, PeriodMethod::FirstMinimum, 3, 0.02, 10.0).unwrap();
        assert_eq!(fm.half_period, 10.0);
        let sp = estimate_period(&series, PeriodMethod::Spectral, 3, 0.02, 10.0).unwrap();
        assert!(
            (sp.half_period - 10.0).abs() < 0.3,
            "got {}",
            sp.half_period
        );
    }

    #[test]
    fn monotone_decay_has_no_minimum() {
        let series = model_series(0.5, 10.0, 60);
        let err = estimate_period(&series, PeriodMethod::FirstMinimum, 3, 0.02, 10.0).unwrap_err();
        assert_eq!(err.name(), "no-minimum");
    }

    #[test]
    fn smoothing_window_must_be_odd() {
        let series = model_series(0.0, 10.0, 60);
        let err = estimate_period(&series, PeriodMethod::FirstMinimum, 4, 0.02, 10.0).unwrap_err();
        assert_eq!(err.name(), "invalid-parameter");
    }

    #[test]
    fn recover_fundamental_identities() {
        assert_eq!(recover_fundamental_period(0.0, 10.0), 1.0);
        assert!((recover_fundamental_period(10.0 * 8f64.ln(), 10.0) - 8.0).abs() < 1e-12);
    }

    #[test]
    fn exact_line_endpoint_is_last_lag() {
        let values: Vec<f64> = (0..10).map(|i| 1.0 - i as f64 / 10.0).collect();
        let series = AutocorrelationSeries::from_values(values, (0, 10), 1.0, true).unwrap();
        assert_eq!(linear_decay_endpoint(&series, 0.98).unwrap(), 9);
    }

    #[test]
    fn model_kink_sets_the_endpoint() {
        // Frozen from direct evaluation: the kink at tau = T = 6 breaks the fit.
        let series = model_series(0.25, 6.0, 30);
        assert_eq!(linear_decay_endpoint(&series, 0.98).unwrap(), 6);
    }

    #[test]
    fn rising_series_has_no_linear_decay() {
        let values: Vec<f64> = (0..10).map(|i| 1.0 - (10 - i) as f64 / 20.0).collect();
        let mut v = values;
        v[0] = 1.0; // keep the normalization invariant
        let series = AutocorrelationSeries::from_values(v, (0, 10), 1.0, false).unwrap();
        // Unnormalized series is rejected outright.
        assert!(linear_decay_endpoint(&series, 0.98).is_err());
        let rising: Vec<f64> = (0..10).map(|i| (i as f64 / 9.0).powi(2).min(1.0)).collect();
        let mut rising = rising;
        rising[0] = 1.0;
        rising.iter_mut().skip(1).for_each(|v| *v *= 0.5);
        let series = AutocorrelationSeries::from_values(rising, (0, 10), 1.0, true).unwrap();
        let err = linear_decay_endpoint(&series, 0.98).unwrap_err();
        assert_eq!(err.name(), "no-linear-segment");
    }

    proptest! {
        #[test]
        fn matches_naive_double_loop(
            bits in proptest::collection::vec(proptest::bool::ANY, 8..64),
            lag_seed in 0usize..8,
        ) {
            let values: Vec<i8> = bits.iter().map(|&b| if b { 1 } else { -1 }).collect();
            let max_lag = (values.len() / 2 - 1).min(lag_seed + 1);
            let sig = signal_from(values.clone());
            let fast = full_window_acf(&sig, max_lag);
            match naive_acf(&values, max_lag) {
                None => prop_assert!(fast.is_err()),
                Some(oracle) => {
                    let fast = fast.unwrap();
                    for (a, b) in fast.values().iter().zip(oracle.iter()) {
                        prop_assert!((a - b).abs() < 1e-12);
                    }
                }
            }
        }

        #[test]
        fn sign_flip_leaves_acf_unchanged(
            bits in proptest::collection::vec(proptest::bool::ANY, 10..64),
        ) {
            let values: Vec<i8> = bits.iter().map(|&b| if b { 1 } else { -1 }).collect();
            let flipped: Vec<i8> = values.iter().map(|&v| -v).collect();
            let max_lag = values.len() / 2 - 1;
            let a = full_window_acf(&signal_from(values), max_lag);
            let b = full_window_acf(&signal_from(flipped), max_lag);
            match (a, b) {
                (Ok(a), Ok(b)) => prop_assert_eq!(a.values(), b.values()),
                (Err(_), Err(_)) => {}
                _ => prop_assert!(false, "one side errored"),
            }
        }

        #[test]
        fn normalized_acf_is_bounded(
            bits in proptest::collection::vec(proptest::bool::ANY, 10..80),
        ) {
            let values: Vec<i8> = bits.iter().map(|&b| if b { 1 } else { -1 }).collect();
            let max_lag = values.len() / 2 - 1;
            if let Ok(acf) = full_window_acf(&signal_from(values), max_lag) {
                prop_assert_eq!(acf.values()[0], 1.0);
                for &v in acf.values() {
                    prop_assert!(v.abs() <= 1.0 + NORMALIZATION_SLACK);
                }
            }
        }
    }
}
