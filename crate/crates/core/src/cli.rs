//! Command-line front end. Every command writes one report carrying the full
//! configuration echo, the crate version, a timestamp and a SHA-256 hash of
//! the configuration, so a run can be reproduced from its own output.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::compose::{compose, ComposeOptions};
use crate::counting::{counting_function, counting_function_truncated};
use crate::diagnostics::{
    compactness_curve, example_bayart, kernel_decay_experiment, pointwise_curve, restricted_range_verdict,
};
use crate::error::{Error, Result};
use crate::generators::{factorize, is_prime, GeneratorSystem};
use crate::io::{parse_complex, read_json, SeriesFile, SymbolFile};
use crate::polytorus::{ergodic_decay, ergodic_time_average, mc_average_counting, sample_character, Character};
use crate::series::{Frequency, GDSeries};
use crate::symbol::{validate_symbol, Grid, Symbol};
use crate::verify::{
    littlewood_paley_decay, verify_bayart_bound, verify_decomposition, verify_littlewood_paley, verify_stanton,
    verify_submean, verify_translation_invariance,
};

pub const VERSION: &str = concat!("dhl ", env!("CARGO_PKG_VERSION"));

/// Largest submean ratio accepted by `verify submean` unless overridden.
pub const DEFAULT_MAX_RATIO: f64 = 100.0;

#[derive(Debug, Parser, Serialize)]
#[command(name = "dhl", version, about = "Dirichlet series, composition symbols and counting functions")]
pub struct RunConfig {
    /// Number of ordinary primes in the generator system (inferred from the
    /// input files when omitted).
    #[arg(long, global = true)]
    pub primes: Option<usize>,

    /// Beurling generators, comma separated; `none` for an empty list.
    #[arg(long, global = true, default_value = "3.141592653589793")]
    pub beurling: String,

    /// Seed for every random stream.
    #[arg(long, global = true, env = "DHL_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Worker thread cap (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Report destination (default: stdout).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Evaluate a series at a point.
    Eval {
        #[arg(long)]
        series: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// Squared norm and ℓ¹ norm of a series.
    Norm {
        #[arg(long)]
        series: PathBuf,
    },
    /// Composition `f ∘ ψ` with truncation bounds.
    Compose {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        symbol: PathBuf,
        #[command(flatten)]
        truncation: Truncation,
    },
    /// Counting function `N_ψ(w)`, or the windowed `N_ψ(w, T)`.
    Counting {
        #[arg(long)]
        symbol: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long)]
        window: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        sigma_cut: f64,
    },
    /// Monte Carlo average of `N_{ψ_χ}(w)` over characters.
    AverageCounting {
        #[arg(long)]
        symbol: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        window: Option<f64>,
    },
    /// Time average of `|f_χ(it)|²` over `[-T, T]` and its decay.
    Ergodic {
        #[arg(long)]
        series: PathBuf,
        #[arg(long, default_value_t = 1000.0)]
        t: f64,
        #[arg(long, default_value_t = crate::polytorus::DEFAULT_ERGODIC_POINTS)]
        points: usize,
        /// Use the trivial character instead of a random one.
        #[arg(long)]
        trivial: bool,
    },
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
    /// Pointwise and averaged criterion curves, restricted-range verdict and
    /// optional kernel decay.
    Diagnose {
        #[arg(long)]
        symbol: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "0.5,0.2,0.1,0.05,0.02,0.01")]
        sigmas: Vec<f64>,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        /// Also compute `‖C_ψ K_{σ,p}‖²` for this ordinary prime.
        #[arg(long)]
        kernel_prime: Option<u64>,
        /// Kernel composition cap (default: unbounded).
        #[arg(long)]
        lambda_max: Option<f64>,
    },
    /// The symbol `1 + s - 2^{-s}`: averaged versus pointwise criterion.
    ExampleBayart {
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.05,0.02,0.01")]
        epsilons: Vec<f64>,
        #[arg(long, default_value_t = 2048)]
        quad_points: usize,
    },
}

#[derive(Debug, Clone, Copy, Args, Serialize)]
pub struct Truncation {
    #[arg(long, default_value_t = 65536.0)]
    pub lambda_max: f64,
    #[arg(long, default_value_t = 40)]
    pub k_max: u32,
}

impl Truncation {
    fn options(self) -> ComposeOptions {
        ComposeOptions {
            lambda_max: self.lambda_max,
            k_max: self.k_max,
        }
    }
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum VerifyCommand {
    LittlewoodPaley {
        #[arg(long)]
        series: PathBuf,
        #[arg(long, default_value_t = 1000.0)]
        t: f64,
        /// 0 uses the exact diagonal.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    Stanton {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        symbol: PathBuf,
        #[arg(long, default_value_t = 10.0)]
        t: f64,
        #[arg(long, default_value_t = 400)]
        samples: usize,
        #[arg(long, default_value_t = 65536.0)]
        lambda_max: f64,
    },
    Tonelli {
        #[arg(long)]
        symbol: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
    Submean {
        #[arg(long)]
        symbol: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 64)]
        area_points: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_RATIO)]
        max_ratio: f64,
    },
    Bayart {
        #[arg(long)]
        symbol: PathBuf,
        /// Points `w`, separated by `;`.
        #[arg(long, value_delimiter = ';', allow_hyphen_values = true)]
        w: Vec<String>,
        /// Additional random points with `Re w ∈ (0, 1]`, `|Im w| ≤ 5`.
        #[arg(long, default_value_t = 0)]
        random_w: usize,
    },
    Decomposition {
        #[arg(long)]
        symbol: PathBuf,
        #[arg(long)]
        series: PathBuf,
        /// Product of Beurling generators, e.g. `q1` or `q1^2*q2`.
        #[arg(long)]
        bk: String,
        #[arg(long, default_value_t = 65536.0)]
        lambda_max: f64,
    },
}

/// Outcome of one command before it is wrapped into a report.
struct Outcome {
    result: Value,
    /// `(label, x, value, std_error)` rows for CSV output.
    rows: Vec<(String, f64, f64, f64)>,
    passed: bool,
}

impl Outcome {
    fn new<T: Serialize>(result: &T, rows: Vec<(String, f64, f64, f64)>, passed: bool) -> Result<Self> {
        Ok(Self {
            result: serde_json::to_value(result)?,
            rows,
            passed,
        })
    }
}

/// Parses `argv` (program name first), runs the command and writes its
/// report. Returns the process exit code: 0 on success, 1 on usage or
/// configuration errors, 2 when a verification fails.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&config) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn execute(config: &RunConfig) -> Result<i32> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = config.threads {
        if n == 0 {
            return Err(Error::Config("threads must be at least 1".into()));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool
        .build()
        .map_err(|e| Error::Config(format!("cannot start thread pool: {e}")))?;
    let system = build_system(config)?;
    let outcome = pool.install(|| dispatch(config, &system))?;

    let echo = json!({
        "config": config,
        "system": {
            "primes": system.primes(),
            "beurling": system.beurling(),
        },
        "version": VERSION,
    });
    let hash = hex(&Sha256::digest(serde_json::to_vec(&echo)?));
    let timestamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let text = match config.format {
        Format::Json => {
            let report = json!({
                "version": VERSION,
                "timestamp": timestamp,
                "params_hash": hash,
                "config": echo["config"],
                "system": echo["system"],
                "passed": outcome.passed,
                "result": outcome.result,
            });
            serde_json::to_string_pretty(&report)? + "\n"
        }
        Format::Csv => {
            let mut s = String::from("label,x,value,std_error,params_hash\n");
            for (label, x, v, se) in &outcome.rows {
                s += &format!("{label},{x},{v},{se},{hash}\n");
            }
            s
        }
    };
    match &config.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(if outcome.passed { 0 } else { 2 })
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn input_files(command: &Command) -> (Vec<PathBuf>, Vec<PathBuf>) {
    use Command::*;
    use VerifyCommand as V;
    let (series, symbols): (Vec<&PathBuf>, Vec<&PathBuf>) = match command {
        Eval { series, .. } | Norm { series } | Ergodic { series, .. } => (vec![series], vec![]),
        Compose { series, symbol, .. } => (vec![series], vec![symbol]),
        Counting { symbol, .. } | AverageCounting { symbol, .. } | Diagnose { symbol, .. } => (vec![], vec![symbol]),
        ExampleBayart { .. } => (vec![], vec![]),
        Verify { check } => match check {
            V::LittlewoodPaley { series, .. } => (vec![series], vec![]),
            V::Stanton { series, symbol, .. } | V::Decomposition { series, symbol, .. } => {
                (vec![series], vec![symbol])
            }
            V::Tonelli { symbol, .. } | V::Submean { symbol, .. } | V::Bayart { symbol, .. } => (vec![], vec![symbol]),
        },
    };
    (
        series.into_iter().cloned().collect(),
        symbols.into_iter().cloned().collect(),
    )
}

fn build_system(config: &RunConfig) -> Result<Arc<GeneratorSystem>> {
    let beurling: Vec<f64> = match config.beurling.trim() {
        "" | "none" => vec![],
        list => list
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Config(format!("beurling: cannot parse {v:?}")))
            })
            .collect::<Result<_>>()?,
    };
    let (series, symbols) = input_files(&config.command);
    let mut needed = 1;
    for p in &series {
        needed = needed.max(read_json::<SeriesFile>(p)?.required_primes().map_err(|e| with_path(p, e))?);
    }
    for p in &symbols {
        needed = needed.max(read_json::<SymbolFile>(p)?.phi.required_primes().map_err(|e| with_path(p, e))?);
    }
    if let Command::Verify {
        check: VerifyCommand::Decomposition { bk, .. },
    } = &config.command
    {
        // ⌊b_k⌋ has to factor over the ordinary primes of the system.
        let probe = GeneratorSystem::new(1, &beurling)?;
        let floor = parse_beurling_frequency(&probe, bk)?.value(&probe)?.floor();
        if floor >= 2.0 && floor < 1e15 {
            if let Some(&(p, _)) = factorize(floor as u64).last() {
                needed = needed.max(first_primes_up_to(p));
            }
        }
    }
    let primes = match config.primes {
        Some(p) => p,
        None => needed,
    };
    GeneratorSystem::new(primes, &beurling)
}

fn first_primes_up_to(p: u64) -> usize {
    (2..=p).filter(|&n| is_prime(n)).count()
}

fn load_series(path: &Path, system: &Arc<GeneratorSystem>) -> Result<GDSeries> {
    read_json::<SeriesFile>(path)?
        .to_series(system)
        .map_err(|e| with_path(path, e))
}

fn load_symbol(path: &Path, system: &Arc<GeneratorSystem>) -> Result<Symbol> {
    read_json::<SymbolFile>(path)?
        .to_symbol(system)
        .map_err(|e| with_path(path, e))
}

fn with_path(path: &Path, e: Error) -> Error {
    let p = path.display();
    match e {
        Error::Structural(m) => Error::Structural(format!("{p}: {m}")),
        Error::Config(m) => Error::Config(format!("{p}: {m}")),
        Error::UnsupportedClass(m) => Error::UnsupportedClass(format!("{p}: c0: {m}")),
        other => other,
    }
}

fn point(name: &str, text: &str) -> Result<Complex64> {
    parse_complex(text).map_err(|e| match e {
        Error::Config(m) => Error::Config(format!("{name}: {m}")),
        other => other,
    })
}

fn require_positive(name: &str, w: Complex64) -> Result<()> {
    if w.re > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name}: Re w must be positive (got {w})")))
    }
}

/// Parses a product of Beurling generators such as `q1^2*q2`.
pub fn parse_beurling_frequency(system: &GeneratorSystem, text: &str) -> Result<Frequency> {
    let mut pairs = Vec::new();
    for factor in text.split('*').map(str::trim) {
        let (key, exp) = match factor.split_once('^') {
            Some((k, e)) => (
                k,
                e.parse::<u32>()
                    .map_err(|_| Error::Config(format!("bk: bad exponent in {factor:?}")))?,
            ),
            None => (factor, 1),
        };
        let index = system.parse_key(key).map_err(|e| Error::Structural(format!("bk: {e}")))?;
        if !system.is_beurling(index) {
            return Err(Error::Structural(format!("bk: {key:?} is not a Beurling generator")));
        }
        pairs.push((index, exp));
    }
    Ok(Frequency::from_pairs(pairs))
}

/// `n` points with `Re w ∈ (0, 1]` and `|Im w| ≤ 5` from the stream `seed`.
pub fn random_points(n: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let re = 1.0 - rng.random::<f64>();
            let im = rng.random_range(-5.0..=5.0);
            Complex64::new(re, im)
        })
        .collect()
}

fn dispatch(config: &RunConfig, system: &Arc<GeneratorSystem>) -> Result<Outcome> {
    let seed = config.seed;
    match &config.command {
        Command::Eval { series, s } => {
            let f = load_series(series, system)?;
            let z = point("s", s)?;
            let v = f.evaluate(z);
            Outcome::new(
                &json!({ "s": { "re": z.re, "im": z.im }, "value": { "re": v.re, "im": v.im } }),
                vec![("re".into(), z.re, v.re, 0.0), ("im".into(), z.re, v.im, 0.0)],
                true,
            )
        }
        Command::Norm { series } => {
            let f = load_series(series, system)?;
            let n = f.norm_sq();
            Outcome::new(
                &json!({ "norm_sq": n, "norm": n.sqrt(), "l1_norm": f.l1_norm(), "terms": f.len() }),
                vec![("norm_sq".into(), 0.0, n, 0.0)],
                true,
            )
        }
        Command::Compose {
            series,
            symbol,
            truncation,
        } => {
            let f = load_series(series, system)?;
            let psi = load_symbol(symbol, system)?;
            let c = compose(&f, &psi, truncation.options())?;
            let n = c.series.norm_sq();
            Outcome::new(
                &json!({
                    "norm_sq": n,
                    "composition": c,
                    "series": SeriesFile::from_series(&c.series),
                }),
                vec![("norm_sq".into(), 0.0, n, c.tail_bound)],
                true,
            )
        }
        Command::Counting {
            symbol,
            w,
            window,
            sigma_cut,
        } => {
            let psi = load_symbol(symbol, system)?;
            let w = point("w", w)?;
            require_positive("w", w)?;
            let r = match window {
                None => counting_function(&psi, w)?,
                Some(t) => counting_function_truncated(&psi, w, *t, *sigma_cut)?,
            };
            let rows = vec![(format!("{w}"), w.re, r.value, 0.0)];
            Outcome::new(&r, rows, true)
        }
        Command::AverageCounting {
            symbol,
            w,
            samples,
            window,
        } => {
            let psi = load_symbol(symbol, system)?;
            let w = point("w", w)?;
            require_positive("w", w)?;
            let e = mc_average_counting(&psi, w, *samples, seed, *window)?;
            let rows = vec![(format!("{w}"), w.re, e.mean, e.std_error)];
            Outcome::new(&e, rows, true)
        }
        Command::Ergodic {
            series,
            t,
            points,
            trivial,
        } => {
            let f = load_series(series, system)?;
            let chi = if *trivial {
                Character::trivial(system)
            } else {
                sample_character(system, seed, 0)
            };
            let average = ergodic_time_average(&f, &chi, *t, *points)?;
            let decay = ergodic_decay(&f, &chi, *t, *points)?;
            let target = f.norm_sq();
            Outcome::new(
                &json!({
                    "average": average,
                    "norm_sq": target,
                    "rel_err": (average - target).abs() / target.max(f64::MIN_POSITIVE),
                    "decay": decay,
                }),
                vec![("average".into(), *t, average, 0.0)],
                true,
            )
        }
        Command::Verify { check } => verify(check, system, seed),
        Command::Diagnose {
            symbol,
            sigmas,
            samples,
            kernel_prime,
            lambda_max,
        } => {
            let psi = load_symbol(symbol, system)?;
            let pointwise = pointwise_curve(&psi, sigmas)?;
            let averaged = compactness_curve(&psi, sigmas, *samples, seed)?;
            let verdict = restricted_range_verdict(&psi)?;
            let kernel = match kernel_prime {
                Some(p) => {
                    let index = system
                        .prime_index(*p)
                        .ok_or_else(|| Error::Config(format!("kernel-prime: {p} is not in the system")))?;
                    Some(kernel_decay_experiment(&psi, sigmas, index, lambda_max.unwrap_or(f64::INFINITY))?)
                }
                None => None,
            };
            let mut rows = Vec::new();
            for (i, &s) in sigmas.iter().enumerate() {
                rows.push(("pointwise".into(), s, pointwise.values[i], 0.0));
                rows.push(("averaged".into(), s, averaged.values[i], averaged.std_errors[i]));
            }
            for e in kernel.iter().flatten() {
                rows.push(("kernel".into(), e.sigma, e.norm_sq, e.composition_tail));
            }
            Outcome::new(
                &json!({
                    "pointwise": pointwise,
                    "averaged": averaged,
                    "restricted_range": verdict,
                    "kernel_decay": kernel,
                }),
                rows,
                true,
            )
        }
        Command::ExampleBayart { epsilons, quad_points } => {
            let r = example_bayart(epsilons, *quad_points)?;
            let decreasing = r.averaged.windows(2).all(|w| w[1] < w[0]);
            let halved = r.averaged.last() < r.averaged.first().map(|v| v / 2.0).as_ref();
            let floor = 0.95 / (1.0 + 2f64.ln());
            let pointwise_ok = r
                .epsilons
                .iter()
                .zip(&r.pointwise)
                .all(|(&e, &v)| e > 0.05 || v >= floor);
            let checks = json!({
                "h_at_one_below_1e-6": r.h_at_one < 1e-6,
                "averaged_strictly_decreasing": decreasing,
                "averaged_final_below_half": halved,
                "pointwise_floor": floor,
                "pointwise_above_floor": pointwise_ok,
            });
            let mut rows = Vec::new();
            for (i, &e) in r.epsilons.iter().enumerate() {
                rows.push(("averaged".into(), e, r.averaged[i], 0.0));
                rows.push(("pointwise".into(), e, r.pointwise[i], 0.0));
            }
            let passed = r.h_at_one < 1e-6 && decreasing && (r.epsilons.len() < 2 || halved) && pointwise_ok;
            Outcome::new(&json!({ "checks": checks, "report": r }), rows, passed)
        }
    }
}

fn verify(check: &VerifyCommand, system: &Arc<GeneratorSystem>, seed: u64) -> Result<Outcome> {
    match check {
        VerifyCommand::LittlewoodPaley { series, t, samples } => {
            let f = load_series(series, system)?;
            let r = verify_littlewood_paley(&f, *t, *samples, seed)?;
            let decay = littlewood_paley_decay(&f, *t, *samples, seed)?;
            let rows = vec![("rhs".into(), *t, r.rhs, r.std_error)];
            let passed = r.passed;
            Outcome::new(&json!({ "report": r, "decay": decay }), rows, passed)
        }
        VerifyCommand::Stanton {
            series,
            symbol,
            t,
            samples,
            lambda_max,
        } => {
            let f = load_series(series, system)?;
            let psi = load_symbol(symbol, system)?;
            let r = verify_stanton(&f, &psi, *t, *samples, seed, *lambda_max)?;
            let rows = vec![("rhs".into(), *t, r.rhs, r.std_error)];
            let passed = r.passed;
            Outcome::new(&r, rows, passed)
        }
        VerifyCommand::Tonelli { symbol, w, samples } => {
            let psi = load_symbol(symbol, system)?;
            let w = point("w", w)?;
            require_positive("w", w)?;
            let r = verify_translation_invariance(&psi, w, *samples, seed)?;
            let rows = vec![(format!("{w}"), w.re, r.lhs, r.std_error)];
            let passed = r.passed;
            Outcome::new(&r, rows, passed)
        }
        VerifyCommand::Submean {
            symbol,
            w,
            r,
            samples,
            area_points,
            max_ratio,
        } => {
            let psi = load_symbol(symbol, system)?;
            let w = point("w", w)?;
            let rep = verify_submean(&psi, w, *r, *samples, *area_points, seed)?;
            let passed = rep.ratio <= *max_ratio;
            let rows = vec![(format!("{w}"), *r, rep.ratio, 0.0)];
            Outcome::new(&json!({ "max_ratio": max_ratio, "report": rep }), rows, passed)
        }
        VerifyCommand::Bayart { symbol, w, random_w } => {
            let psi = load_symbol(symbol, system)?;
            let mut ws = w
                .iter()
                .filter(|s| !s.trim().is_empty())
                .map(|s| point("w", s))
                .collect::<Result<Vec<_>>>()?;
            ws.extend(random_points(*random_w, seed));
            if ws.is_empty() {
                return Err(Error::Config("w: no points given (use --w or --random-w)".into()));
            }
            for &w in &ws {
                require_positive("w", w)?;
            }
            let membership = validate_symbol(&psi, Grid::default_for(psi.phi()))?;
            let r = verify_bayart_bound(&psi, &ws)?;
            let rows = r
                .checks
                .iter()
                .map(|c| (format!("{}{:+}i", c.w[0], c.w[1]), c.w[0], c.value, 0.0))
                .collect();
            let passed = r.passed;
            Outcome::new(&json!({ "membership": membership, "report": r }), rows, passed)
        }
        VerifyCommand::Decomposition {
            symbol,
            series,
            bk,
            lambda_max,
        } => {
            let psi = load_symbol(symbol, system)?;
            let f = load_series(series, system)?;
            let bk = parse_beurling_frequency(system, bk)?;
            let r = verify_decomposition(&psi, &f, &bk, *lambda_max)?;
            let rows = vec![
                ("norm_sq_b".into(), 0.0, r.norm_sq_b, r.tail_bound),
                ("norm_sq_floor".into(), 0.0, r.norm_sq_floor, r.tail_bound),
            ];
            let passed = r.passed;
            Outcome::new(&r, rows, passed)
        }
    }
}
