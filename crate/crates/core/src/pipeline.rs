//! End-to-end experiment runs that emit one plot-ready CSV dataset per
//! figure, with reproducible seeds and config-hashed outputs.

use std::path::{Path, PathBuf};

use crate::chaos::{
    fundamental_period, integrate, upward_crossings, IntegrationSettings, RosslerParams,
};
use crate::correlation::{
    autocorrelation, ensemble_model_acf, estimate_period, linear_decay_endpoint,
    model_autocorrelation, rescale, AutocorrelationSeries, EnsembleAcf, PeriodEstimate,
    PeriodMethod,
};
use crate::error::{Error, Result};
use crate::export::{fmt_f64, fnv1a_hash, write_csv};
use crate::lnseq::{ln_sequence, LnSequence};
use crate::primes::{first_n_primes, gaps, kill_twins, primes_up_to, twin_pairs};
use crate::telegraph::{
    telegraph_from_changepoints, telegraph_from_crossings, ModelTelegraphParams, Sign,
    TelegraphSignal,
};

/// Everything a reproduction run needs; hashed into every output file.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub prime_count: usize,
    pub scale: f64,
    /// Main analysis interval in signal coordinates (figure 1).
    pub interval: (i64, i64),
    /// Low-n companion interval (figure 2).
    pub fig2_interval: (i64, i64),
    /// Twin-killed analysis intervals (figures 5-7).
    pub k2_intervals: [(i64, i64); 3],
    pub max_lag: usize,
    pub k2_max_lag: usize,
    pub model_max_lag: usize,
    pub smoothing_window: usize,
    pub prominence: f64,
    pub r2_threshold: f64,
    pub rossler: RosslerParams,
    pub integration: IntegrationSettings,
    /// Grid step for sampling the crossing-driven telegraph signal.
    pub telegraph_grid_step: f64,
    pub model: ModelTelegraphParams,
    pub flip_probability: f64,
    pub realizations: usize,
    pub seed: u64,
    pub output_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            prime_count: 10_000,
            scale: 10.0,
            interval: (90_000, 100_000),
            fig2_interval: (1_000, 20_000),
            k2_intervals: [(6_000, 6_600), (12_000, 13_000), (19_000, 20_000)],
            max_lag: 170,
            k2_max_lag: 100,
            model_max_lag: 60,
            smoothing_window: 3,
            prominence: 0.02,
            r2_threshold: 0.98,
            rossler: RosslerParams::default(),
            integration: IntegrationSettings::default(),
            telegraph_grid_step: 0.1,
            model: ModelTelegraphParams::default(),
            flip_probability: 0.75,
            realizations: 10_000,
            seed: 42,
            output_dir: PathBuf::from("out"),
        }
    }
}

impl ExperimentConfig {
    /// Canonical `key = value` rendering; the config-file format round-trips
    /// through this text.
    pub fn canonical_text(&self) -> String {
        let mut s = String::new();
        let mut push = |k: &str, v: String| {
            s.push_str(k);
            s.push_str(" = ");
            s.push_str(&v);
            s.push('\n');
        };
        push("prime_count", self.prime_count.to_string());
        push("scale", fmt_f64(self.scale));
        push(
            "interval",
            format!("{}:{}", self.interval.0, self.interval.1),
        );
        push(
            "fig2_interval",
            format!("{}:{}", self.fig2_interval.0, self.fig2_interval.1),
        );
        for (i, iv) in self.k2_intervals.iter().enumerate() {
            push(
                &format!("k2_interval_{}", i + 1),
                format!("{}:{}", iv.0, iv.1),
            );
        }
        push("max_lag", self.max_lag.to_string());
        push("k2_max_lag", self.k2_max_lag.to_string());
        push("model_max_lag", self.model_max_lag.to_string());
        push("smoothing_window", self.smoothing_window.to_string());
        push("prominence", fmt_f64(self.prominence));
        push("r2_threshold", fmt_f64(self.r2_threshold));
        push("rossler_a", fmt_f64(self.rossler.a));
        push("rossler_b", fmt_f64(self.rossler.b));
        push("rossler_c", fmt_f64(self.rossler.c));
        push("threshold", fmt_f64(self.rossler.threshold_x));
        push(
            "initial",
            format!(
                "{},{},{}",
                fmt_f64(self.integration.initial[0]),
                fmt_f64(self.integration.initial[1]),
                fmt_f64(self.integration.initial[2])
            ),
        );
        push("dt", fmt_f64(self.integration.dt));
        push("t_end", fmt_f64(self.integration.t_end));
        push("transient", fmt_f64(self.integration.transient));
        push("telegraph_grid_step", fmt_f64(self.telegraph_grid_step));
        push("period_T", fmt_f64(self.model.period));
        push("q", fmt_f64(self.model.persistence));
        push("model_length", self.model.length.to_string());
        push("model_grid_step", fmt_f64(self.model.grid_step));
        push("flip_prob", fmt_f64(self.flip_probability));
        push("realizations", self.realizations.to_string());
        push("seed", self.seed.to_string());
        s
    }

    /// Hash of the canonical text, as written into CSV headers.
    pub fn hash_hex(&self) -> String {
        format!("{:016x}", fnv1a_hash(&self.canonical_text()))
    }
}

/// Both period readings for one window, plus the cross-method discrepancy
/// flag (raised when they disagree by more than 25%).
#[derive(Debug, Clone)]
pub struct AcfAnalysis {
    pub acf: AutocorrelationSeries,
    pub first_minimum: Option<PeriodEstimate>,
    pub spectral: Option<PeriodEstimate>,
    pub discrepancy: bool,
}

impl AcfAnalysis {
    /// First-minimum estimate when available, spectral otherwise.
    pub fn preferred(&self) -> &PeriodEstimate {
        self.first_minimum
            .as_ref()
            .or(self.spectral.as_ref())
            .expect("analysis holds at least one estimate")
    }
}

/// Computes the windowed ACF of `signal` and reads the half-period with both
/// estimators; fails only if both estimators fail.
pub fn analyze_interval(
    signal: &TelegraphSignal,
    interval: (i64, i64),
    max_lag: usize,
    smoothing_window: usize,
    prominence: f64,
    scale: f64,
) -> Result<AcfAnalysis> {
    let acf = autocorrelation(signal, interval.0, interval.1, max_lag)?;
    let first_minimum = estimate_period(
        &acf,
        PeriodMethod::FirstMinimum,
        smoothing_window,
        prominence,
        scale,
    );
    let spectral = estimate_period(
        &acf,
        PeriodMethod::Spectral,
        smoothing_window,
        prominence,
        scale,
    );
    let (first_minimum, spectral) = match (first_minimum, spectral) {
        (Err(e), Err(_)) => return Err(e),
        (fm, sp) => (fm.ok(), sp.ok()),
    };
    let discrepancy = match (&first_minimum, &spectral) {
        (Some(a), Some(b)) => {
            let hi = a.half_period.max(b.half_period);
            (a.half_period - b.half_period).abs() > 0.25 * hi
        }
        _ => false,
    };
    Ok(AcfAnalysis {
        acf,
        first_minimum,
        spectral,
        discrepancy,
    })
}

/// Output of the log-gap reproduction run (figures 1 and 2).
#[derive(Debug)]
pub struct Fig12Result {
    pub hi: AcfAnalysis,
    pub lo: AcfAnalysis,
    /// Fundamental period of the chaotic reference, in time units.
    pub rossler_period: f64,
    pub mean_crossing_interval: f64,
    pub rossler_acf: AutocorrelationSeries,
    pub rescaled_rossler: AutocorrelationSeries,
    pub lag_factor: f64,
    pub amplitude_factor: f64,
    pub files: Vec<PathBuf>,
}

fn build_ln_signal(
    cfg: &ExperimentConfig,
    needed_end: i64,
) -> Result<(LnSequence, TelegraphSignal)> {
    let primes = first_n_primes(cfg.prime_count)?;
    let ln = ln_sequence(&gaps(&primes)?, cfg.scale)?;
    let reached = ln.last().unwrap_or(0);
    if reached < needed_end as u64 {
        let required =
            (cfg.prime_count as f64 * needed_end as f64 / reached.max(1) as f64 * 1.1).ceil();
        return Err(Error::InsufficientPrimes {
            supplied: cfg.prime_count,
            reached,
            needed: needed_end as u64,
            required: required as usize,
        });
    }
    let points: Vec<i64> = ln.values().iter().map(|&v| v as i64).collect();
    let signal = telegraph_from_changepoints(&points, 2, needed_end, Sign::Plus)?;
    Ok((ln, signal))
}

/// Value of the series at its first local minimum; global minimum fallback.
fn minimum_depth(acf: &AutocorrelationSeries, half_period: f64) -> f64 {
    let lag = half_period.round() as usize;
    if lag > 0 && lag < acf.values().len() {
        acf.values()[lag]
    } else {
        acf.values()
            .iter()
            .skip(1)
            .copied()
            .fold(f64::INFINITY, f64::min)
    }
}

/// Builds the log-gap telegraph signal, computes its ACF on both intervals,
/// runs the chaotic reference, rescales its ACF onto the log-gap lag axis,
/// and writes the two overlay datasets.
pub fn run_fig1_fig2(cfg: &ExperimentConfig) -> Result<Fig12Result> {
    let needed_end = cfg.interval.1.max(cfg.fig2_interval.1);
    let (_ln, signal) = build_ln_signal(cfg, needed_end)?;

    let hi = analyze_interval(
        &signal,
        cfg.interval,
        cfg.max_lag,
        cfg.smoothing_window,
        cfg.prominence,
        cfg.scale,
    )?;
    let lo = analyze_interval(
        &signal,
        cfg.fig2_interval,
        cfg.max_lag,
        cfg.smoothing_window,
        cfg.prominence,
        cfg.scale,
    )?;

    let traj = integrate(&cfg.rossler, &cfg.integration)?;
    let rossler_period = fundamental_period(&traj)?;
    let crossings = upward_crossings(&traj, cfg.rossler.threshold_x);
    if crossings.len() < 2 {
        return Err(Error::Domain(format!(
            "only {} upward crossings of x = {}",
            crossings.len(),
            cfg.rossler.threshold_x
        )));
    }
    let mean_crossing_interval =
        (crossings.last().unwrap() - crossings.first().unwrap()) / (crossings.len() - 1) as f64;
    let horizon = (traj.t()[0], *traj.t().last().unwrap());
    let tele = telegraph_from_crossings(&crossings, horizon, cfg.telegraph_grid_step, Sign::Plus)?;

    let t_ln = hi.preferred().half_period;
    let approx_ross_lag = rossler_period / cfg.telegraph_grid_step;
    let interior = tele.len();
    let lag_cap = interior.saturating_sub(1) / 2;
    let ross_max_lag =
        (((cfg.max_lag as f64) * approx_ross_lag / t_ln * 1.25).ceil() as usize).min(lag_cap);
    let rossler_acf = autocorrelation(&tele, -1, tele.len() as i64, ross_max_lag)?;
    let ross_estimate = estimate_period(
        &rossler_acf,
        PeriodMethod::FirstMinimum,
        cfg.smoothing_window,
        cfg.prominence,
        1.0,
    )
    .or_else(|_| {
        estimate_period(
            &rossler_acf,
            PeriodMethod::Spectral,
            cfg.smoothing_window,
            cfg.prominence,
            1.0,
        )
    })?;

    let lag_factor = t_ln / ross_estimate.half_period;
    let depth_ln = minimum_depth(&hi.acf, t_ln);
    let depth_ross = minimum_depth(&rossler_acf, ross_estimate.half_period);
    let amplitude_factor = if depth_ln < 0.0 && depth_ross < 0.0 {
        depth_ln / depth_ross
    } else {
        1.0
    };
    let rescaled_rossler = rescale(&rossler_acf, lag_factor, amplitude_factor)?;

    let hash = cfg.hash_hex();
    let overlay_rows = |analysis: &AcfAnalysis| -> Vec<String> {
        analysis
            .acf
            .values()
            .iter()
            .enumerate()
            .map(|(tau, &c)| {
                let ross = rescaled_rossler
                    .values()
                    .get(tau)
                    .map(|&v| fmt_f64(v))
                    .unwrap_or_default();
                format!("{tau},{},{ross}", fmt_f64(c))
            })
            .collect()
    };
    let fig1 = cfg.output_dir.join("fig1.csv");
    write_csv(&fig1, &hash, "tau,c,c_rossler", overlay_rows(&hi))?;
    let fig2 = cfg.output_dir.join("fig2.csv");
    write_csv(&fig2, &hash, "tau,c,c_rossler", overlay_rows(&lo))?;

    Ok(Fig12Result {
        hi,
        lo,
        rossler_period,
        mean_crossing_interval,
        rossler_acf,
        rescaled_rossler,
        lag_factor,
        amplitude_factor,
        files: vec![fig1, fig2],
    })
}

/// Output of the model-signal run (figure 3).
#[derive(Debug)]
pub struct Fig3Result {
    /// Lag axis in the model's time units.
    pub taus: Vec<f64>,
    pub analytic: Vec<f64>,
    pub ensemble: EnsembleAcf,
    /// Largest |ensemble - analytic| / standard-error ratio over all lags.
    pub max_z: f64,
    pub files: Vec<PathBuf>,
}

/// Evaluates the analytic model curve and overlays the Monte Carlo ensemble.
pub fn run_fig3(cfg: &ExperimentConfig) -> Result<Fig3Result> {
    let ensemble = ensemble_model_acf(
        &cfg.model,
        cfg.flip_probability,
        cfg.realizations,
        cfg.model_max_lag,
        cfg.seed,
    )?;
    let taus: Vec<f64> = (0..=cfg.model_max_lag)
        .map(|lag| lag as f64 * cfg.model.grid_step)
        .collect();
    let analytic: Vec<f64> = taus
        .iter()
        .map(|&tau| model_autocorrelation(cfg.model.persistence, cfg.model.period, tau))
        .collect();

    let mut max_z = 0.0f64;
    for ((&c, &a), &se) in ensemble
        .acf
        .values()
        .iter()
        .zip(analytic.iter())
        .zip(ensemble.std_error.iter())
    {
        let diff = (c - a).abs();
        let z = if diff <= 1e-12 { 0.0 } else { diff / se };
        max_z = max_z.max(z);
    }

    let path = cfg.output_dir.join("fig3.csv");
    let rows = taus.iter().enumerate().map(|(lag, &tau)| {
        format!(
            "{},{},{},{}",
            fmt_f64(tau),
            fmt_f64(analytic[lag]),
            fmt_f64(ensemble.acf.values()[lag]),
            fmt_f64(ensemble.std_error[lag])
        )
    });
    write_csv(&path, &cfg.hash_hex(), "tau,c_model,c_mc,se_mc", rows)?;

    Ok(Fig3Result {
        taus,
        analytic,
        ensemble,
        max_z,
        files: vec![path],
    })
}

/// Per-interval report of the twin-killed run.
#[derive(Debug)]
pub struct IntervalReport {
    pub interval: (i64, i64),
    pub analysis: AcfAnalysis,
    pub decay_endpoint: usize,
}

/// Output of the twin-killed run (figures 5-7).
#[derive(Debug)]
pub struct Fig567Result {
    pub reports: Vec<IntervalReport>,
    /// Primes supplied, sized from the largest interval bound.
    pub prime_count_used: usize,
    pub twin_pairs_removed: usize,
    pub k2_len: usize,
    pub files: Vec<PathBuf>,
}

/// Builds the twin-killed subsequence, encodes it as a telegraph signal in
/// natural-number coordinates, and analyzes each configured interval.
pub fn run_fig567(cfg: &ExperimentConfig) -> Result<Fig567Result> {
    let needed = cfg
        .k2_intervals
        .iter()
        .map(|iv| iv.1)
        .max()
        .expect("three intervals");
    let primes = primes_up_to(needed as u64)?;
    let twin_count = twin_pairs(&primes).len();
    let k2 = kill_twins(&primes);
    let points: Vec<i64> = k2.values().iter().map(|&v| v as i64).collect();
    let signal = telegraph_from_changepoints(&points, 2, needed, Sign::Plus)?;

    let hash = cfg.hash_hex();
    let mut reports = Vec::new();
    let mut files = Vec::new();
    for (i, &interval) in cfg.k2_intervals.iter().enumerate() {
        let analysis = analyze_interval(
            &signal,
            interval,
            cfg.k2_max_lag,
            cfg.smoothing_window,
            cfg.prominence,
            cfg.scale,
        )?;
        let decay_endpoint = linear_decay_endpoint(&analysis.acf, cfg.r2_threshold)?;
        let path = cfg.output_dir.join(format!("fig{}.csv", i + 5));
        let rows = analysis
            .acf
            .values()
            .iter()
            .enumerate()
            .map(|(tau, &c)| format!("{tau},{}", fmt_f64(c)));
        write_csv(&path, &hash, "tau,c", rows)?;
        files.push(path);
        reports.push(IntervalReport {
            interval,
            analysis,
            decay_endpoint,
        });
    }

    Ok(Fig567Result {
        reports,
        prime_count_used: primes.len(),
        twin_pairs_removed: twin_count,
        k2_len: k2.len(),
        files,
    })
}

/// Writes a prime or K2 sequence as a one-column CSV.
pub fn export_value_column(path: &Path, hash: &str, header: &str, values: &[u64]) -> Result<()> {
    write_csv(path, hash, header, values.iter().map(|v| v.to_string()))
}
