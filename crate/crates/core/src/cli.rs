//! The `carsimplex` command line.
//!
//! Exit codes: 0 success, 1 a check failed, 2 inconclusive, 3 the surface
//! iteration did not converge, 64 bad flags or an invalid model file or
//! start, 66 model file missing, 70 numerical breakdown, 74 output error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::criteria::{run_criteria, CheckConfig, CriteriaReport, Verdict};
use crate::error::{Error, Result};
use crate::io::{write_json, write_points_csv, write_series_csv, write_surface_csv, write_sweep_csv};
use crate::models::{load_model, CompetitionModel, ModelSpec};
use crate::odeflow::{check_a_conditions, integrate, wang_jiang_check, WangJiangOutcome, DEFAULT_TIME_GRID};
use crate::order::StateVector;
use crate::simplex::{
    compute_carrying_simplex_with, point_cloud, sweep_1d, unordered_points, verify_surface, Scheme,
    SurfaceConfig, SurfaceMetadata, UnorderedOutcome, VerificationReport, VerifyConfig,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_NO_INPUT: i32 = 66;
pub const EXIT_SOFTWARE: i32 = 70;
pub const EXIT_IO: i32 = 74;

#[derive(Debug, Parser)]
#[command(name = "carsimplex", version, about = "Carrying simplices of competitive maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the existence and uniqueness hypotheses for a model.
    Check(CheckArgs),
    /// Compute the carrying simplex and verify it.
    Simplex(SimplexArgs),
    /// Iterate the map (or integrate the ODE) from one start.
    Simulate(SimulateArgs),
    /// Orbit diagram of the scalar Ricker map over a range of b.
    Sweep1d(SweepArgs),
    /// Ratio monotonicity along ordered solution pairs of a periodic system.
    Wangjiang(WangJiangArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct Common {
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long)]
    model: PathBuf,
    /// Grid points per axis for the spectral scan.
    #[arg(long, default_value_t = 16)]
    grid: usize,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    /// Skip the refinement pass around the worst grid cell.
    #[arg(long)]
    no_refine: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct SimplexArgs {
    #[arg(long)]
    model: PathBuf,
    /// Lattice resolution m (nodes per edge minus one).
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long, default_value_t = SurfaceConfig::DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = SurfaceConfig::DEFAULT_MAX_ITER)]
    max_iter: usize,
    /// Random surface points for the invariance residual; point-cloud size
    /// when n >= 4.
    #[arg(long, default_value_t = 1_000)]
    samples: usize,
    /// Random starts for the attraction check.
    #[arg(long, default_value_t = 100)]
    starts: usize,
    /// Map iterates per start in the attraction check.
    #[arg(long, default_value_t = 400)]
    steps: usize,
    /// Map iterates per point-cloud orbit when n >= 4. Long orbits all
    /// collapse onto the interior attractor, so keep this short.
    #[arg(long, default_value_t = 25)]
    cloud_steps: usize,
    /// Pass threshold for the invariance residual and axial endpoints.
    #[arg(long, default_value_t = 1e-8)]
    residual_tol: f64,
    #[arg(long, value_enum, default_value = "pull-back")]
    scheme: SchemeArg,
    /// Largest interpolation degree.
    #[arg(long)]
    degree: Option<usize>,
    /// Metadata JSON path; defaults to `<out>.meta.json`.
    #[arg(long)]
    meta: Option<PathBuf>,
    /// Compute even if the criteria do not all pass.
    #[arg(long)]
    force: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    PullBack,
    Forward,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long)]
    model: PathBuf,
    /// Comma-separated initial state.
    #[arg(long, value_delimiter = ',', required = true)]
    x0: Vec<f64>,
    /// Map iterates, or periods for an ODE model.
    #[arg(long, default_value_t = 100)]
    steps: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long)]
    b_min: f64,
    #[arg(long)]
    b_max: f64,
    #[arg(long, default_value_t = 100)]
    steps: usize,
    #[arg(long, default_value_t = 1_000)]
    burn_in: usize,
    #[arg(long, default_value_t = 100)]
    record: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct WangJiangArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long, default_value_t = 20)]
    pairs: usize,
    #[arg(long, default_value_t = 3.0)]
    t_end: f64,
    /// Lower start; with `--v0` replaces the random pairs.
    #[arg(long, value_delimiter = ',', num_args = 1.., requires = "v0")]
    u0: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', num_args = 1.., requires = "u0")]
    v0: Option<Vec<f64>>,
    #[command(flatten)]
    common: Common,
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match cli.command {
        Command::Check(a) => cmd_check(&a),
        Command::Simplex(a) => cmd_simplex(&a),
        Command::Simulate(a) => cmd_simulate(&a),
        Command::Sweep1d(a) => cmd_sweep(&a),
        Command::Wangjiang(a) => cmd_wangjiang(&a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter { .. }
        | Error::DimensionMismatch { .. }
        | Error::InvalidState { .. }
        | Error::EmptyState
        | Error::ZeroVector
        | Error::Precondition(_)
        | Error::Json(_) => EXIT_USAGE,
        Error::Io(_) | Error::Csv(_) => EXIT_IO,
        _ => EXIT_SOFTWARE,
    }
}

/// Model loading failures name the file; a missing file gets its own code.
fn load(path: &Path) -> std::result::Result<(ModelSpec, Box<dyn CompetitionModel>), i32> {
    load_model(path).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        match &e {
            Error::Io(io) if io.kind() == io::ErrorKind::NotFound => EXIT_NO_INPUT,
            Error::Io(_) => EXIT_IO,
            _ => EXIT_USAGE,
        }
    })
}

macro_rules! load_or_exit {
    ($path:expr) => {
        match load($path) {
            Ok(v) => v,
            Err(code) => return Ok(code),
        }
    };
}

fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn finish(mut w: Box<dyn Write>) -> Result<()> {
    w.flush()?;
    Ok(())
}

fn state(values: &[f64], n: usize, what: &str) -> Result<StateVector> {
    if values.len() != n {
        return Err(Error::InvalidParameter {
            field: what.into(),
            reason: format!("expected {n} comma-separated values, got {}", values.len()),
        });
    }
    StateVector::new(values.to_vec())
}

/// Criteria report, extended by the (A1)–(A4) checks for periodic systems.
fn criteria_report(desc: &ModelSpec, model: &dyn CompetitionModel, cfg: &CheckConfig) -> Result<CriteriaReport> {
    let mut report = run_criteria(model, cfg);
    if let Some(system) = desc.periodic_system() {
        report.conditions.extend(check_a_conditions(&system?, DEFAULT_TIME_GRID));
    }
    Ok(report)
}

fn cmd_check(args: &CheckArgs) -> Result<i32> {
    let (desc, model) = load_or_exit!(&args.model);
    if args.grid == 0 {
        return Err(Error::InvalidParameter { field: "grid".into(), reason: "must be at least 1".into() });
    }
    let cfg = CheckConfig {
        grid: args.grid,
        refine: !args.no_refine,
        samples: args.samples,
        seed: args.common.seed,
        ..CheckConfig::default()
    };
    let report = criteria_report(&desc, model.as_ref(), &cfg)?;
    let mut out = open_out(args.common.out.as_deref())?;
    match args.common.format.unwrap_or(Format::Json) {
        Format::Json => write_json(&report, &mut out)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(["id", "verdict", "worst", "samples", "advisory"])?;
            for c in &report.conditions {
                let verdict = serde_json::to_value(c.verdict)?;
                w.write_record([
                    c.id.clone(),
                    verdict.as_str().unwrap_or_default().to_string(),
                    c.worst.map(crate::io::fmt_num).unwrap_or_default(),
                    c.samples.to_string(),
                    c.advisory.to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    finish(out)?;
    Ok(report.exit_code())
}

#[derive(Serialize)]
struct SurfaceSummary<'a> {
    model: &'a str,
    n: usize,
    seed: u64,
    surface: &'a SurfaceMetadata,
    verification: &'a VerificationReport,
}

#[derive(Serialize)]
struct SurfaceJson<'a> {
    #[serde(flatten)]
    summary: SurfaceSummary<'a>,
    directions: Vec<Vec<f64>>,
    radii: &'a [f64],
}

#[derive(Serialize)]
struct CloudSummary<'a> {
    model: &'a str,
    n: usize,
    seed: u64,
    points: usize,
    steps: usize,
    unordered: &'a UnorderedOutcome,
}

#[derive(Serialize)]
struct CloudJson<'a> {
    #[serde(flatten)]
    summary: CloudSummary<'a>,
    cloud: Vec<Vec<f64>>,
}

fn meta_path(args: &SimplexArgs) -> Option<PathBuf> {
    args.meta.clone().or_else(|| {
        args.common.out.as_ref().map(|p| {
            let mut s = p.clone().into_os_string();
            s.push(".meta.json");
            PathBuf::from(s)
        })
    })
}

fn cmd_simplex(args: &SimplexArgs) -> Result<i32> {
    let (desc, model) = load_or_exit!(&args.model);
    let model = model.as_ref();
    let seed = args.common.seed;
    if !args.force {
        let cfg = CheckConfig { seed, ..CheckConfig::default() };
        let report = criteria_report(&desc, model, &cfg)?;
        let code = report.exit_code();
        if code != EXIT_OK {
            let open: Vec<&str> = report
                .conditions
                .iter()
                .filter(|c| !c.advisory && !c.verdict.is_pass())
                .map(|c| c.id.as_str())
                .collect();
            eprintln!(
                "criteria not met ({}); rerun with --force to compute anyway",
                open.join(", ")
            );
            return Ok(code);
        }
    }
    let n = model.dim();
    let format = args.common.format.unwrap_or(Format::Csv);
    if n >= 4 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cloud = point_cloud(model, args.samples, args.cloud_steps, &mut rng)?;
        let unordered = unordered_points(&cloud);
        let summary = CloudSummary { model: model.name(), n, seed, points: cloud.len(), steps: args.cloud_steps, unordered: &unordered };
        let mut out = open_out(args.common.out.as_deref())?;
        match format {
            Format::Csv => {
                write_points_csv(&cloud, n, &mut out)?;
                if let Some(p) = meta_path(args) {
                    write_json(&summary, BufWriter::new(File::create(p)?))?;
                }
            }
            Format::Json => {
                let cloud = cloud.iter().map(|p| p.to_vec()).collect();
                write_json(&CloudJson { summary, cloud }, &mut out)?;
            }
        }
        finish(out)?;
        return Ok(if unordered.passed { EXIT_OK } else { EXIT_FAIL });
    }

    let mut cfg = SurfaceConfig::for_dim(n);
    cfg.tol = args.tol;
    cfg.max_iter = args.max_iter;
    cfg.scheme = match args.scheme {
        SchemeArg::PullBack => Scheme::PullBack,
        SchemeArg::Forward => Scheme::Forward,
    };
    if let Some(m) = args.grid {
        cfg.m = m;
    }
    if let Some(d) = args.degree {
        cfg.max_degree = d;
    }
    let surface = compute_carrying_simplex_with(model, &cfg)?;
    let vcfg = VerifyConfig {
        samples: args.samples,
        starts: args.starts,
        steps: args.steps,
        seed,
        residual_tol: args.residual_tol,
    };
    let verification = verify_surface(&surface, model, &vcfg)?;
    let summary =
        SurfaceSummary { model: model.name(), n, seed, surface: surface.metadata(), verification: &verification };
    let mut out = open_out(args.common.out.as_deref())?;
    match format {
        Format::Csv => {
            write_surface_csv(&surface, &mut out)?;
            match meta_path(args) {
                Some(p) => write_json(&summary, BufWriter::new(File::create(p)?))?,
                None => eprintln!(
                    "converged: {}, invariance residual {:.3e}, verification {}",
                    surface.metadata().converged,
                    verification.invariance_residual,
                    if verification.passed { "passed" } else { "failed" }
                ),
            }
        }
        Format::Json => {
            let grid = surface.grid();
            let directions = (0..grid.len()).map(|k| grid.direction(k)).collect();
            write_json(&SurfaceJson { summary, directions, radii: surface.radii() }, &mut out)?;
        }
    }
    finish(out)?;
    Ok(if !surface.metadata().converged {
        EXIT_NOT_CONVERGED
    } else if verification.passed {
        EXIT_OK
    } else {
        EXIT_FAIL
    })
}

#[derive(Serialize)]
struct Row<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<f64>,
    x: &'a [f64],
}

fn cmd_simulate(args: &SimulateArgs) -> Result<i32> {
    let (desc, model) = load_or_exit!(&args.model);
    let x0 = state(&args.x0, model.dim(), "x0")?;
    let (label, prefix, labels, states) = match desc.periodic_system() {
        Some(system) => {
            let traj = integrate(&system?, &x0, (0.0, args.steps as f64), &desc.integration_config()?)?;
            let labels: Vec<String> = traj.times.iter().map(|t| crate::io::fmt_num(*t)).collect();
            ("t", "u", labels, traj.states)
        }
        None => {
            let mut states = vec![x0];
            for _ in 0..args.steps {
                let next = model.eval_map(states.last().expect("nonempty"))?;
                states.push(next);
            }
            let labels: Vec<String> = (0..states.len()).map(|k| k.to_string()).collect();
            ("k", "x", labels, states)
        }
    };
    let mut out = open_out(args.common.out.as_deref())?;
    match args.common.format.unwrap_or(Format::Csv) {
        Format::Csv => write_series_csv(label, prefix, &labels, &states, &mut out)?,
        Format::Json => {
            let rows: Vec<Row> = labels
                .iter()
                .zip(&states)
                .map(|(l, s)| Row {
                    k: (label == "k").then(|| l.parse().expect("integer label")),
                    t: (label == "t").then(|| l.parse().expect("numeric label")),
                    x: s,
                })
                .collect();
            write_json(&rows, &mut out)?;
        }
    }
    finish(out)?;
    Ok(EXIT_OK)
}

fn cmd_sweep(args: &SweepArgs) -> Result<i32> {
    let rows = sweep_1d(args.a, args.b_min, args.b_max, args.steps, args.burn_in, args.record)?;
    let mut out = open_out(args.common.out.as_deref())?;
    match args.common.format.unwrap_or(Format::Csv) {
        Format::Csv => write_sweep_csv(&rows, &mut out)?,
        Format::Json => write_json(&rows, &mut out)?,
    }
    finish(out)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct PairResult {
    u0: Vec<f64>,
    v0: Vec<f64>,
    #[serde(flatten)]
    outcome: WangJiangOutcome,
}

#[derive(Serialize)]
struct WangJiangSummary {
    model: String,
    n: usize,
    seed: u64,
    t_end: f64,
    steps_per_period: usize,
    passed: bool,
    min_slope: Option<f64>,
    pairs: Vec<PairResult>,
}

/// `v0` uniform in `[0.05, 2]^n`, `u0` a random fraction in `[0.1, 0.9]` of
/// it coordinatewise, so `u0 ≪ v0`.
fn random_pair<R: Rng>(n: usize, rng: &mut R) -> (Vec<f64>, Vec<f64>) {
    let v: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..=2.0)).collect();
    let u = v.iter().map(|vi| vi * rng.random_range(0.1..=0.9)).collect();
    (u, v)
}

fn cmd_wangjiang(args: &WangJiangArgs) -> Result<i32> {
    let (desc, model) = load_or_exit!(&args.model);
    let Some(system) = desc.periodic_system() else {
        return Err(Error::Precondition(format!(
            "wangjiang needs a periodic_lv model, got {}",
            model.name()
        )));
    };
    let system = system?;
    let conditions = check_a_conditions(&system, DEFAULT_TIME_GRID);
    if let Some(a1) = conditions.iter().find(|c| c.id == "A1" && c.verdict == Verdict::Fail) {
        return Err(Error::Precondition(format!(
            "system is not competitive: {} = {} (witness t = {})",
            a1.note,
            a1.worst.unwrap_or(f64::NAN),
            match &a1.witness {
                Some(crate::criteria::Witness::Scalar(t)) => *t,
                _ => f64::NAN,
            }
        )));
    }
    if !(args.t_end > 0.0 && args.t_end.is_finite()) {
        return Err(Error::InvalidParameter { field: "t-end".into(), reason: "must be positive".into() });
    }
    let n = system.dim();
    let starts: Vec<(Vec<f64>, Vec<f64>)> = match (&args.u0, &args.v0) {
        (Some(u), Some(v)) => vec![(u.clone(), v.clone())],
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.common.seed);
            (0..args.pairs).map(|_| random_pair(n, &mut rng)).collect()
        }
    };
    let config = desc.integration_config()?;
    let mut pairs = Vec::with_capacity(starts.len());
    for (u, v) in starts {
        let outcome =
            wang_jiang_check(&system, &state(&u, n, "u0")?, &state(&v, n, "v0")?, (0.0, args.t_end), &config)?;
        pairs.push(PairResult { u0: u, v0: v, outcome });
    }
    let passed = pairs.iter().all(|p| p.outcome.passed);
    let min_slope = pairs.iter().filter_map(|p| p.outcome.min_slope).reduce(f64::min);
    let summary = WangJiangSummary {
        model: model.name().to_string(),
        n,
        seed: args.common.seed,
        t_end: args.t_end,
        steps_per_period: config.steps_per_period(),
        passed,
        min_slope,
        pairs,
    };
    let mut out = open_out(args.common.out.as_deref())?;
    match args.common.format.unwrap_or(Format::Json) {
        Format::Json => write_json(&summary, &mut out)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(["pair", "passed", "min_slope", "ordered_until", "steps_checked"])?;
            for (k, p) in summary.pairs.iter().enumerate() {
                w.write_record([
                    k.to_string(),
                    p.outcome.passed.to_string(),
                    p.outcome.min_slope.map(crate::io::fmt_num).unwrap_or_default(),
                    crate::io::fmt_num(p.outcome.ordered_until),
                    p.outcome.steps_checked.to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    finish(out)?;
    Ok(if passed { EXIT_OK } else { EXIT_FAIL })
}
