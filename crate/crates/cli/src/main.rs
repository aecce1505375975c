//! Command-line front end for the prime hidden-periodicity pipeline.

mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use primeperiod::chaos::{fundamental_period, integrate, upward_crossings};
use primeperiod::correlation::{ensemble_model_acf, model_autocorrelation};
use primeperiod::export::{fmt_f64, fnv1a_hash, write_csv};
use primeperiod::lnseq::ln_sequence;
use primeperiod::pipeline::{
    analyze_interval, export_value_column, run_fig1_fig2, run_fig3, run_fig567, AcfAnalysis,
    ExperimentConfig,
};
use primeperiod::primes::{first_n_primes, gaps, kill_twins, primes_up_to, twin_pairs};
use primeperiod::telegraph::{telegraph_from_changepoints, Sign};

use config::{parse_f64, parse_interval, parse_u64, parse_usize, FileConfig};

#[derive(Parser)]
#[command(
    name = "primeperiod",
    version,
    about = "Hidden-periodicity analysis of the prime sequence",
    long_about = "Builds the log-gap telegraph signal of the primes, reads its hidden period \
                  off windowed autocorrelation functions, and reproduces every figure dataset \
                  with byte-identical reruns under a fixed seed."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate primes (one of --count or --limit)
    Primes(PrimesArgs),
    /// Scaled, rounded cumulative log-gap sequence of the prime gaps
    Lnseq(LnseqArgs),
    /// ±1 telegraph signal of the log-gap sequence
    Telegraph(TelegraphArgs),
    /// Integrate the chaotic reference system and detect threshold crossings
    Rossler(RosslerArgs),
    /// Windowed autocorrelation of the log-gap telegraph signal
    Acf(AcfArgs),
    /// Model telegraph signal: analytic autocorrelation plus Monte Carlo
    Model(ModelArgs),
    /// Twin-killed subsequence of the primes
    K2(K2Args),
    /// Reproduce figure datasets end to end
    Reproduce(ReproduceArgs),
}

/// Shared trailing help: every numeric flag accepts scientific notation.
#[derive(Args)]
struct ConfigArg {
    /// Flat `key = value` config file (# comments); explicit flags override it
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

impl ConfigArg {
    fn load(&self) -> Result<FileConfig, AppError> {
        match &self.config {
            None => Ok(FileConfig::default()),
            Some(path) => FileConfig::load(path).map_err(AppError::Usage),
        }
    }
}

#[derive(Args)]
struct PrimesArgs {
    /// How many primes to generate, starting at 2
    #[arg(long, value_name = "N")]
    count: Option<String>,
    /// Generate all primes up to this bound instead
    #[arg(long, value_name = "N", conflicts_with = "count")]
    limit: Option<String>,
    /// Write a one-column CSV here instead of printing
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(flatten)]
    config: ConfigArg,
}

#[derive(Args)]
struct LnseqArgs {
    /// Prime count feeding the gap sequence [default: 10000]
    #[arg(long, value_name = "N")]
    count: Option<String>,
    /// Multiplier applied to the cumulative log-gaps [default: 10]
    #[arg(long, value_name = "S")]
    scale: Option<String>,
    /// Write a one-column CSV here instead of printing
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(flatten)]
    config: ConfigArg,
}

#[derive(Args)]
struct TelegraphArgs {
    /// Prime count feeding the log-gap sequence [default: 10000]
    #[arg(long, value_name = "N")]
    count: Option<String>,
    /// Log-gap scale [default: 10]
    #[arg(long, value_name = "S")]
    scale: Option<String>,
    /// Domain start:end in signal coordinates [default: 2 to the sequence end]
    #[arg(long, value_name = "A:B")]
    interval: Option<String>,
    /// Write `n,v` CSV here instead of printing a summary
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(flatten)]
    config: ConfigArg,
}

#[derive(Args)]
struct RosslerArgs {
    /// Integration step [default: 0.01]
    #[arg(long, value_name = "DT")]
    dt: Option<String>,
    /// Integration horizon [default: 5200]
    #[arg(long, value_name = "T")]
    t_end: Option<String>,
    /// Discarded initial span [default: 200]
    #[arg(long, value_name = "T")]
    transient: Option<String>,
    /// Upward-crossing threshold on x [default: 7]
    #[arg(long, value_name = "X")]
    threshold: Option<String>,
    /// Directory for trajectory and crossing CSVs
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    #[command(flatten)]
    config: ConfigArg,
}

#[derive(Args)]
struct AcfArgs {
    /// Prime count feeding the log-gap signal [default: 10000]
    #[arg(long, value_name = "N")]
    count: Option<String>,
    /// Log-gap scale [default: 10]
    #[arg(long, value_name = "S")]
    scale: Option<String>,
    /// Averaging window start:end [default: 9e4:1e5]
    #[arg(long, value_name = "A:B")]
    interval: Option<String>,
    /// Largest lag [default: 170]
    #[arg(long, value_name = "L")]
    max_lag: Option<String>,
    /// Write `tau,c` CSV here
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(flatten)]
    config: ConfigArg,
}

#[derive(Args)]
struct ModelArgs {
    /// Persistence q of the analytic curve [default: 0.25]
    #[arg(long, value_name = "Q")]
    q: Option<String>,
    /// Event period T [default: 10]
    #[arg(long = "period-T", value_name = "T")]
    period_t: Option<String>,
    /// Per-event flip probability [default: 1 - q]
    #[arg(long, value_name = "P")]
    flip_prob: Option<String>,
    /// Monte Carlo realizations [default: 10000]
    #[arg(long, value_name = "R")]
    realizations: Option<String>,
    /// Largest lag [default: 60]
    #[arg(long, value_name = "L")]
    max_lag: Option<String>,
    /// Sampling grid step [default: 1]
    #[arg(long, value_name = "DT")]
    dt: Option<String>,
    /// Base seed; realization r uses seed + r [default: 42]
    #[arg(long, value_name = "SEED")]
    seed: Option<String>,
    /// Write `tau,c_model,c_mc,se_mc` CSV here
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(flatten)]
    config: ConfigArg,
}

#[derive(Args)]
struct K2Args {
    /// Sieve bound for the full prime sequence [default: 20000]
    #[arg(long, value_name = "N")]
    limit: Option<String>,
    /// Write a one-column CSV here instead of printing
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(flatten)]
    config: ConfigArg,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Figure to reproduce: 1, 2, 3, 5, 6, 7 or all [default: all]
    #[arg(long, value_name = "FIG")]
    figure: Option<String>,
    /// Main analysis window for figure 1 [default: 9e4:1e5]; the figure-2 and
    /// twin-killed windows take config keys fig2_interval and k2_interval_1..3
    #[arg(long, value_name = "A:B")]
    interval: Option<String>,
    /// Base seed for every stochastic component [default: 42]
    #[arg(long, value_name = "SEED")]
    seed: Option<String>,
    /// Output directory [default: out]
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Prime count for the log-gap figures [default: 10000]
    #[arg(long, value_name = "N")]
    count: Option<String>,
    /// Log-gap scale [default: 10]
    #[arg(long, value_name = "S")]
    scale: Option<String>,
    /// Largest lag for the log-gap figures [default: 170]
    #[arg(long, value_name = "L")]
    max_lag: Option<String>,
    /// Persistence q of the model figure [default: 0.25]
    #[arg(long, value_name = "Q")]
    q: Option<String>,
    /// Model flip probability [default: 0.75]
    #[arg(long, value_name = "P")]
    flip_prob: Option<String>,
    /// Model event period [default: 10]
    #[arg(long = "period-T", value_name = "T")]
    period_t: Option<String>,
    /// Monte Carlo realizations [default: 10000]
    #[arg(long, value_name = "R")]
    realizations: Option<String>,
    /// Integration step [default: 0.01]
    #[arg(long, value_name = "DT")]
    dt: Option<String>,
    /// Integration horizon [default: 5200]
    #[arg(long, value_name = "T")]
    t_end: Option<String>,
    /// Discarded initial span [default: 200]
    #[arg(long, value_name = "T")]
    transient: Option<String>,
    /// Upward-crossing threshold on x [default: 7]
    #[arg(long, value_name = "X")]
    threshold: Option<String>,
    #[command(flatten)]
    config: ConfigArg,
}

enum AppError {
    Usage(String),
    Compute(primeperiod::Error),
}

impl From<primeperiod::Error> for AppError {
    fn from(e: primeperiod::Error) -> Self {
        AppError::Compute(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(1)
                }
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(1)
        }
        Err(AppError::Compute(e)) => {
            eprintln!("error[{}]: {e}", e.name());
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Primes(args) => cmd_primes(args),
        Command::Lnseq(args) => cmd_lnseq(args),
        Command::Telegraph(args) => cmd_telegraph(args),
        Command::Rossler(args) => cmd_rossler(args),
        Command::Acf(args) => cmd_acf(args),
        Command::Model(args) => cmd_model(args),
        Command::K2(args) => cmd_k2(args),
        Command::Reproduce(args) => cmd_reproduce(args),
    }
}

fn usage(msg: impl Into<String>) -> AppError {
    AppError::Usage(msg.into())
}

/// flag -> config file -> none.
fn merge<T, F>(
    flag: &Option<String>,
    file: Result<Option<T>, String>,
    parse: F,
) -> Result<Option<T>, AppError>
where
    F: Fn(&str) -> Result<T, String>,
{
    if let Some(raw) = flag {
        return parse(raw).map(Some).map_err(usage);
    }
    file.map_err(usage)
}

fn merge_usize(
    flag: &Option<String>,
    file: &FileConfig,
    key: &str,
    default: usize,
) -> Result<usize, AppError> {
    Ok(merge(flag, file.usize_value(key), parse_usize)?.unwrap_or(default))
}

fn merge_u64(
    flag: &Option<String>,
    file: &FileConfig,
    key: &str,
    default: u64,
) -> Result<u64, AppError> {
    Ok(merge(flag, file.u64_value(key), parse_u64)?.unwrap_or(default))
}

fn merge_f64(
    flag: &Option<String>,
    file: &FileConfig,
    key: &str,
    default: f64,
) -> Result<f64, AppError> {
    Ok(merge(flag, file.f64_value(key), parse_f64)?.unwrap_or(default))
}

fn merge_interval(
    flag: &Option<String>,
    file: &FileConfig,
    key: &str,
    default: (i64, i64),
) -> Result<(i64, i64), AppError> {
    Ok(merge(flag, file.interval_value(key), parse_interval)?.unwrap_or(default))
}

fn op_hash(op: &str, fields: &[(&str, String)]) -> String {
    let mut text = format!("op = {op}\n");
    for (k, v) in fields {
        text.push_str(&format!("{k} = {v}\n"));
    }
    format!("{:016x}", fnv1a_hash(&text))
}

fn cmd_primes(args: PrimesArgs) -> Result<(), AppError> {
    let file = args.config.load()?;
    let count = merge(&args.count, file.usize_value("count"), parse_usize)?;
    let limit = merge(&args.limit, file.u64_value("limit"), parse_u64)?;
    // An explicit flag silences the config file's other key.
    let (count, limit) = match (&args.count, &args.limit) {
        (Some(_), _) => (count, None),
        (_, Some(_)) => (None, limit),
        _ => (count, limit),
    };
    let (seq, hash) = match (count, limit) {
        (Some(_), Some(_)) => {
            return Err(usage("--count and --limit are mutually exclusive"));
        }
        (Some(n), None) => (
            first_n_primes(n)?,
            op_hash("primes", &[("count", n.to_string())]),
        ),
        (None, Some(l)) => (
            primes_up_to(l)?,
            op_hash("primes", &[("limit", l.to_string())]),
        ),
        (None, None) => return Err(usage("provide --count or --limit")),
    };
    match &args.out {
        Some(path) => export_value_column(path, &hash, "value", seq.values())?,
        None => println!(
            "{}",
            seq.values()
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        ),
    }
    Ok(())
}

fn cmd_lnseq(args: LnseqArgs) -> Result<(), AppError> {
    let file = args.config.load()?;
    let count = merge_usize(&args.count, &file, "count", 10_000)?;
    let scale = merge_f64(&args.scale, &file, "scale", 10.0)?;
    let primes = first_n_primes(count)?;
    let ln = ln_sequence(&gaps(&primes)?, scale)?;
    if ln.dropped_nonincreasing() > 0 {
        eprintln!(
            "note: {} entries rounded onto their predecessor and were dropped",
            ln.dropped_nonincreasing()
        );
    }
    let hash = op_hash(
        "lnseq",
        &[("count", count.to_string()), ("scale", fmt_f64(scale))],
    );
    match &args.out {
        Some(path) => export_value_column(path, &hash, "lnseq", ln.values())?,
        None => println!(
            "{}",
            ln.values()
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        ),
    }
    Ok(())
}

fn cmd_telegraph(args: TelegraphArgs) -> Result<(), AppError> {
    let file = args.config.load()?;
    let count = merge_usize(&args.count, &file, "count", 10_000)?;
    let scale = merge_f64(&args.scale, &file, "scale", 10.0)?;
    let primes = first_n_primes(count)?;
    let ln = ln_sequence(&gaps(&primes)?, scale)?;
    let default_end = ln.last().unwrap_or(2) as i64;
    let interval = merge_interval(&args.interval, &file, "interval", (2, default_end))?;
    let points: Vec<i64> = ln.values().iter().map(|&v| v as i64).collect();
    let signal = telegraph_from_changepoints(&points, interval.0, interval.1, Sign::Plus)?;
    match &args.out {
        Some(path) => {
            let hash = op_hash(
                "telegraph",
                &[
                    ("count", count.to_string()),
                    ("scale", fmt_f64(scale)),
                    ("interval", format!("{}:{}", interval.0, interval.1)),
                ],
            );
            let start = signal.start_index();
            let rows = signal
                .values()
                .iter()
                .enumerate()
                .map(move |(i, &v)| format!("{},{v}", start + i as i64));
            write_csv(path, &hash, "n,v", rows)?;
        }
        None => println!(
            "domain [{}, {}]: {} samples, {} sign changes",
            signal.start_index(),
            signal.end_index(),
            signal.len(),
            signal.change_points().len()
        ),
    }
    Ok(())
}

fn cmd_rossler(args: RosslerArgs) -> Result<(), AppError> {
    let file = args.config.load()?;
    let mut cfg = ExperimentConfig::default();
    cfg.integration.dt = merge_f64(&args.dt, &file, "dt", cfg.integration.dt)?;
    cfg.integration.t_end = merge_f64(&args.t_end, &file, "t_end", cfg.integration.t_end)?;
    cfg.integration.transient = merge_f64(
        &args.transient,
        &file,
        "transient",
        cfg.integration.transient,
    )?;
    cfg.rossler.threshold_x =
        merge_f64(&args.threshold, &file, "threshold", cfg.rossler.threshold_x)?;

    let traj = integrate(&cfg.rossler, &cfg.integration)?;
    let period = fundamental_period(&traj)?;
    let crossings = upward_crossings(&traj, cfg.rossler.threshold_x);
    let mean = if crossings.len() >= 2 {
        (crossings.last().unwrap() - crossings.first().unwrap()) / (crossings.len() - 1) as f64
    } else {
        f64::NAN
    };
    println!(
        "fundamental period {period:.4}; {} upward crossings of x = {}; mean interval {mean:.4}",
        crossings.len(),
        cfg.rossler.threshold_x
    );
    if let Some(dir) = &args.out {
        let hash = op_hash(
            "rossler",
            &[
                ("dt", fmt_f64(cfg.integration.dt)),
                ("t_end", fmt_f64(cfg.integration.t_end)),
                ("transient", fmt_f64(cfg.integration.transient)),
                ("threshold", fmt_f64(cfg.rossler.threshold_x)),
            ],
        );
        let traj_rows = (0..traj.len()).map(|i| {
            format!(
                "{},{},{},{}",
                fmt_f64(traj.t()[i]),
                fmt_f64(traj.x()[i]),
                fmt_f64(traj.y()[i]),
                fmt_f64(traj.z()[i])
            )
        });
        write_csv(
            &dir.join("rossler_trajectory.csv"),
            &hash,
            "t,x,y,z",
            traj_rows,
        )?;
        write_csv(
            &dir.join("rossler_crossings.csv"),
            &hash,
            "t_cross",
            crossings.iter().map(|&t| fmt_f64(t)),
        )?;
    }
    Ok(())
}

fn print_analysis(label: &str, analysis: &AcfAnalysis) {
    let prefix = if label.is_empty() {
        String::new()
    } else {
        format!("{label} ")
    };
    match &analysis.first_minimum {
        Some(e) => println!(
            "{prefix}first-minimum: T_hat = {} (±{}), T0 = {:.3}",
            e.half_period, e.uncertainty, e.fundamental
        ),
        None => println!("{prefix}first-minimum: no prominent minimum"),
    }
    match &analysis.spectral {
        Some(e) => println!(
            "{prefix}spectral:      T_hat = {:.3} (±{:.1}), T0 = {:.3}",
            e.half_period, e.uncertainty, e.fundamental
        ),
        None => println!("{prefix}spectral:      no usable peak"),
    }
    if analysis.discrepancy {
        println!("{prefix}warning: the two estimators disagree by more than 25%");
    }
}

fn cmd_acf(args: AcfArgs) -> Result<(), AppError> {
    let file = args.config.load()?;
    let count = merge_usize(&args.count, &file, "count", 10_000)?;
    let scale = merge_f64(&args.scale, &file, "scale", 10.0)?;
    let interval = merge_interval(&args.interval, &file, "interval", (90_000, 100_000))?;
    let max_lag = merge_usize(&args.max_lag, &file, "max_lag", 170)?;

    let primes = first_n_primes(count)?;
    let ln = ln_sequence(&gaps(&primes)?, scale)?;
    let reached = ln.last().unwrap_or(0) as i64;
    if reached < interval.1 {
        return Err(primeperiod::Error::InsufficientPrimes {
            supplied: count,
            reached: reached as u64,
            needed: interval.1 as u64,
            required: (count as f64 * interval.1 as f64 / reached.max(1) as f64 * 1.1) as usize,
        }
        .into());
    }
    let points: Vec<i64> = ln.values().iter().map(|&v| v as i64).collect();
    let signal = telegraph_from_changepoints(&points, 2, interval.1, Sign::Plus)?;
    let analysis = analyze_interval(&signal, interval, max_lag, 3, 0.02, scale)?;
    print_analysis("", &analysis);
    if let Some(path) = &args.out {
        let hash = op_hash(
            "acf",
            &[
                ("count", count.to_string()),
                ("scale", fmt_f64(scale)),
                ("interval", format!("{}:{}", interval.0, interval.1)),
                ("max_lag", max_lag.to_string()),
            ],
        );
        let rows = analysis
            .acf
            .values()
            .iter()
            .enumerate()
            .map(|(tau, &c)| format!("{tau},{}", fmt_f64(c)));
        write_csv(path, &hash, "tau,c", rows)?;
    }
    Ok(())
}

fn cmd_model(args: ModelArgs) -> Result<(), AppError> {
    let file = args.config.load()?;
    let defaults = ExperimentConfig::default();
    let q = merge_f64(&args.q, &file, "q", defaults.model.persistence)?;
    let period = merge_f64(&args.period_t, &file, "period_T", defaults.model.period)?;
    let flip_prob = merge_f64(&args.flip_prob, &file, "flip_prob", 1.0 - q)?;
    let realizations = merge_usize(
        &args.realizations,
        &file,
        "realizations",
        defaults.realizations,
    )?;
    let max_lag = merge_usize(&args.max_lag, &file, "max_lag", defaults.model_max_lag)?;
    let grid_step = merge_f64(&args.dt, &file, "dt", defaults.model.grid_step)?;
    let seed = merge_u64(&args.seed, &file, "seed", defaults.seed)?;

    let params = primeperiod::telegraph::ModelTelegraphParams {
        period,
        persistence: q,
        length: defaults.model.length,
        grid_step,
    };
    let ens = ensemble_model_acf(&params, flip_prob, realizations, max_lag, seed)?;
    let mut max_z = 0.0f64;
    let rows: Vec<String> = (0..=max_lag)
        .map(|lag| {
            let tau = lag as f64 * grid_step;
            let analytic = model_autocorrelation(q, period, tau);
            let mc = ens.acf.values()[lag];
            let se = ens.std_error[lag];
            let diff = (mc - analytic).abs();
            if diff > 1e-12 {
                max_z = max_z.max(diff / se);
            }
            format!(
                "{},{},{},{}",
                fmt_f64(tau),
                fmt_f64(analytic),
                fmt_f64(mc),
                fmt_f64(se)
            )
        })
        .collect();
    println!(
        "q = {q}, flip probability = {flip_prob}, {realizations} realizations: max |mc - analytic| / se = {max_z:.3}"
    );
    if let Some(path) = &args.out {
        let hash = op_hash(
            "model",
            &[
                ("q", fmt_f64(q)),
                ("period_T", fmt_f64(period)),
                ("flip_prob", fmt_f64(flip_prob)),
                ("realizations", realizations.to_string()),
                ("max_lag", max_lag.to_string()),
                ("dt", fmt_f64(grid_step)),
                ("seed", seed.to_string()),
            ],
        );
        write_csv(path, &hash, "tau,c_model,c_mc,se_mc", rows)?;
    }
    Ok(())
}

fn cmd_k2(args: K2Args) -> Result<(), AppError> {
    let file = args.config.load()?;
    let limit = merge_u64(&args.limit, &file, "limit", 20_000)?;
    let primes = primes_up_to(limit)?;
    let pairs = twin_pairs(&primes).len();
    let k2 = kill_twins(&primes);
    println!(
        "{} primes up to {limit}; {pairs} twin pairs; twin-killed subsequence holds {} primes",
        primes.len(),
        k2.len()
    );
    if let Some(path) = &args.out {
        let hash = op_hash("k2", &[("limit", limit.to_string())]);
        export_value_column(path, &hash, "value", k2.values())?;
    }
    Ok(())
}

fn cmd_reproduce(args: ReproduceArgs) -> Result<(), AppError> {
    let file = args.config.load()?;
    let figure = match &args.figure {
        Some(f) => f.clone(),
        None => file.string_value("figure").unwrap_or_else(|| "all".into()),
    };
    if !["1", "2", "3", "5", "6", "7", "all"].contains(&figure.as_str()) {
        return Err(usage(format!(
            "--figure must be one of 1, 2, 3, 5, 6, 7 or all (got `{figure}`)"
        )));
    }

    let mut cfg = ExperimentConfig::default();
    cfg.seed = merge_u64(&args.seed, &file, "seed", cfg.seed)?;
    cfg.prime_count = merge_usize(&args.count, &file, "count", cfg.prime_count)?;
    cfg.scale = merge_f64(&args.scale, &file, "scale", cfg.scale)?;
    cfg.max_lag = merge_usize(&args.max_lag, &file, "max_lag", cfg.max_lag)?;
    cfg.interval = merge_interval(&args.interval, &file, "interval", cfg.interval)?;
    cfg.fig2_interval = merge_interval(&None, &file, "fig2_interval", cfg.fig2_interval)?;
    for (i, slot) in cfg.k2_intervals.iter_mut().enumerate() {
        *slot = merge_interval(&None, &file, &format!("k2_interval_{}", i + 1), *slot)?;
    }
    cfg.model.persistence = merge_f64(&args.q, &file, "q", cfg.model.persistence)?;
    cfg.flip_probability = merge_f64(
        &args.flip_prob,
        &file,
        "flip_prob",
        1.0 - cfg.model.persistence,
    )?;
    cfg.model.period = merge_f64(&args.period_t, &file, "period_T", cfg.model.period)?;
    cfg.realizations = merge_usize(&args.realizations, &file, "realizations", cfg.realizations)?;
    cfg.integration.dt = merge_f64(&args.dt, &file, "dt", cfg.integration.dt)?;
    cfg.integration.t_end = merge_f64(&args.t_end, &file, "t_end", cfg.integration.t_end)?;
    cfg.integration.transient = merge_f64(
        &args.transient,
        &file,
        "transient",
        cfg.integration.transient,
    )?;
    cfg.rossler.threshold_x =
        merge_f64(&args.threshold, &file, "threshold", cfg.rossler.threshold_x)?;
    if let Some(dir) = &args.out {
        cfg.output_dir = dir.clone();
    } else if let Some(dir) = file.string_value("out") {
        cfg.output_dir = PathBuf::from(dir);
    }

    let wants = |f: &str| figure == "all" || figure == f;
    if wants("1") || wants("2") {
        let r = run_fig1_fig2(&cfg)?;
        print_analysis("fig1", &r.hi);
        print_analysis("fig2", &r.lo);
        println!(
            "chaotic reference: fundamental period {:.4}, mean crossing interval {:.4}; overlay rescaled by lag factor {:.4}, amplitude factor {:.4}",
            r.rossler_period, r.mean_crossing_interval, r.lag_factor, r.amplitude_factor
        );
        for f in &r.files {
            println!("wrote {}", f.display());
        }
    }
    if wants("3") {
        let r = run_fig3(&cfg)?;
        println!(
            "model overlay: q = {}, max |mc - analytic| / se = {:.3}",
            cfg.model.persistence, r.max_z
        );
        for f in &r.files {
            println!("wrote {}", f.display());
        }
    }
    if wants("5") || wants("6") || wants("7") {
        let r = run_fig567(&cfg)?;
        println!(
            "twin-killed run: {} primes supplied (sized from the interval bound), {} twin pairs removed, {} kept",
            r.prime_count_used, r.twin_pairs_removed, r.k2_len
        );
        for rep in &r.reports {
            let fm = rep
                .analysis
                .first_minimum
                .as_ref()
                .map(|e| format!("{}", e.half_period))
                .unwrap_or_else(|| "-".into());
            println!(
                "interval {:?}: first-minimum T_hat = {fm}, linear-decay endpoint = {}",
                rep.interval, rep.decay_endpoint
            );
        }
        for f in &r.files {
            println!("wrote {}", f.display());
        }
    }
    Ok(())
}
