//! Barrier-width sweeps written as CSV.
//!
//! A sweep evaluates either the stationary times at a fixed incident energy
//! or the wave-packet averages at a fixed packet, on a uniform grid of
//! barrier widths. Grid points are computed in parallel and written in
//! ascending width order, so output is independent of the thread count.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::clock::{reflection_times, stationary_times};
use crate::ensemble::{ensemble_averages, GaussianPacket, QuadratureSpec};
use crate::error::Error;
use crate::scattering::{wave_numbers, BarrierConfig, Regime, ScatteringContext};

pub const STATIONARY_COLUMNS: &str = "a,k1,regime,T,R,t_ct,t_0,t_cr,tau_d";
pub const ENSEMBLE_COLUMNS: &str =
    "a,p_t,p_r,avg_tct,avg_tcr,avg_taud_t,avg_taud_r,stat_tct_k0,stat_tcr_k0,stat_taud_k0,negk_weight";

/// Tolerance of the post-write check on `T + R = 1` and
/// `τ_D = T·t_ct + R·t_cr`.
pub const VALIDATION_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Stationary,
    Ensemble,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Stationary => "stationary",
            Mode::Ensemble => "ensemble",
        }
    }
}

/// The incident particle, given by energy or by wave number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Particle {
    Energy(f64),
    WaveNumber(f64),
}

impl Particle {
    pub fn wave_number(&self, ctx: &ScatteringContext) -> f64 {
        match *self {
            Particle::Energy(e) => ctx.wave_number(e),
            Particle::WaveNumber(k) => k,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacketShape {
    pub sigma: f64,
    pub z0: f64,
}

/// A validated sweep request.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub mode: Mode,
    pub v0: f64,
    pub v1: f64,
    pub mu: f64,
    pub particle: Particle,
    /// Present iff `mode` is [`Mode::Ensemble`].
    pub packet: Option<PacketShape>,
    pub a_min: f64,
    pub a_max: f64,
    pub a_steps: usize,
    pub quad: QuadratureSpec,
    pub out_path: PathBuf,
    /// Worker threads; `None` uses the available parallelism.
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error("usage: {0}")]
    Usage(#[from] UsageError),

    #[error("a = {a}: {source}")]
    Quadrature { a: f64, source: Error },

    #[error(
        "a = {a}, E = {energy}: transmission time undefined because E does not exceed V1 = {v1}"
    )]
    TransmissionUndefined { a: f64, energy: f64, v1: f64 },

    #[error("a = {a}: {source}")]
    Physics { a: f64, source: Error },

    #[error("output validation failed: {0}")]
    Validation(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl SweepError {
    pub fn exit_code(&self) -> i32 {
        match self {
            SweepError::Usage(_) => 2,
            SweepError::Quadrature { .. } => 3,
            SweepError::TransmissionUndefined { .. } => 4,
            SweepError::Validation(_) => 5,
            SweepError::Physics { .. } | SweepError::Io { .. } => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "swp-clock",
    version,
    about = "Barrier-width sweeps of clock and dwell times",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Stationary times at a fixed incident energy.
    Stationary(CommonArgs),
    /// Sub-ensemble averages for a Gaussian wave packet.
    Ensemble(EnsembleArgs),
}

#[derive(Args, Debug)]
struct CommonArgs {
    #[arg(long, allow_negative_numbers = true)]
    v0: f64,
    #[arg(long, allow_negative_numbers = true)]
    v1: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    mu: f64,
    /// Incident (central) energy.
    #[arg(
        long,
        allow_negative_numbers = true,
        required_unless_present = "k0",
        conflicts_with = "k0"
    )]
    energy: Option<f64>,
    /// Incident (central) wave number.
    #[arg(long, allow_negative_numbers = true)]
    k0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    a_min: f64,
    #[arg(long, allow_negative_numbers = true)]
    a_max: f64,
    #[arg(long)]
    a_steps: usize,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, allow_negative_numbers = true)]
    rel_tol: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    k_window: Option<f64>,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args, Debug)]
struct EnsembleArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long, allow_negative_numbers = true)]
    sigma: f64,
    #[arg(long, allow_negative_numbers = true)]
    z0: f64,
}

fn one_line(err: &clap::Error) -> String {
    err.to_string()
        .lines()
        .map(str::trim)
        .take_while(|l| !l.starts_with("Usage:"))
        .filter(|l| !l.is_empty())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses a full argument vector (including the program name).
pub fn parse_cli<I, T>(argv: I) -> Result<SweepSpec, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| UsageError(one_line(&e)))?;
    let (mode, common, packet) = match cli.command {
        Command::Stationary(c) => (Mode::Stationary, c, None),
        Command::Ensemble(e) => (
            Mode::Ensemble,
            e.common,
            Some(PacketShape {
                sigma: e.sigma,
                z0: e.z0,
            }),
        ),
    };
    let particle = match (common.energy, common.k0) {
        (Some(e), None) => Particle::Energy(e),
        (None, Some(k)) => Particle::WaveNumber(k),
        _ => {
            return Err(UsageError(
                "exactly one of --energy and --k0 is required".into(),
            ))
        }
    };
    let mut quad = QuadratureSpec::default();
    if let Some(r) = common.rel_tol {
        quad.rel_tol = r;
    }
    if let Some(w) = common.k_window {
        quad.k_window = w;
    }
    let spec = SweepSpec {
        mode,
        v0: common.v0,
        v1: common.v1,
        mu: common.mu,
        particle,
        packet,
        a_min: common.a_min,
        a_max: common.a_max,
        a_steps: common.a_steps,
        quad,
        out_path: common.out,
        threads: common.threads,
    };
    spec.validate()?;
    Ok(spec)
}

impl SweepSpec {
    pub fn context(&self) -> ScatteringContext {
        ScatteringContext::with_mass(self.mu).expect("mass validated")
    }

    pub fn validate(&self) -> Result<(), UsageError> {
        let usage = |m: String| Err(UsageError(m));
        let ctx = match ScatteringContext::with_mass(self.mu) {
            Ok(c) => c,
            Err(e) => return usage(e.to_string()),
        };
        if let Err(e) = BarrierConfig::new(self.v0, self.v1, 1.0) {
            return usage(e.to_string());
        }
        match self.particle {
            Particle::Energy(e) if !(e > 0.0 && e.is_finite()) => {
                return usage(format!("--energy must be positive, got {e}"))
            }
            Particle::WaveNumber(k) if !(k > 0.0 && k.is_finite()) => {
                return usage(format!("--k0 must be positive, got {k}"))
            }
            _ => {}
        }
        if !(self.a_min > 0.0 && self.a_min.is_finite()) {
            return usage(format!("--a-min must be positive, got {}", self.a_min));
        }
        if !(self.a_max > self.a_min && self.a_max.is_finite()) {
            return usage(format!("--a-max must exceed --a-min, got {}", self.a_max));
        }
        if self.a_steps < 2 {
            return usage(format!(
                "--a-steps must be at least 2, got {}",
                self.a_steps
            ));
        }
        if self.threads == Some(0) {
            return usage("--threads must be at least 1".into());
        }
        if let Err(e) = self.quad.validate() {
            return usage(e.to_string());
        }
        match (self.mode, self.packet) {
            (Mode::Ensemble, Some(p)) => {
                let k0 = self.particle.wave_number(&ctx);
                if let Err(e) = GaussianPacket::new(k0, p.sigma, p.z0) {
                    return usage(e.to_string());
                }
            }
            (Mode::Stationary, None) => {}
            _ => return usage("--sigma and --z0 are required exactly for ensemble sweeps".into()),
        }
        Ok(())
    }

    /// Uniform grid from `a_min` to `a_max`, both included.
    pub fn widths(&self) -> Vec<f64> {
        let n = self.a_steps - 1;
        (0..=n)
            .map(|i| {
                if i == n {
                    self.a_max
                } else {
                    self.a_min + (self.a_max - self.a_min) * (i as f64 / n as f64)
                }
            })
            .collect()
    }

    /// The argument vector in a fixed order, without `--threads`.
    pub fn canonical_args(&self) -> String {
        let mut s = format!(
            "{} --v0 {} --v1 {} --mu {}",
            self.mode.as_str(),
            self.v0,
            self.v1,
            self.mu
        );
        match self.particle {
            Particle::Energy(e) => write!(s, " --energy {e}").unwrap(),
            Particle::WaveNumber(k) => write!(s, " --k0 {k}").unwrap(),
        }
        if let Some(p) = self.packet {
            write!(s, " --sigma {} --z0 {}", p.sigma, p.z0).unwrap();
        }
        write!(
            s,
            " --a-min {} --a-max {} --a-steps {} --rel-tol {:e} --k-window {} --out {}",
            self.a_min,
            self.a_max,
            self.a_steps,
            self.quad.rel_tol,
            self.quad.k_window,
            self.out_path.display()
        )
        .unwrap();
        s
    }

    pub fn header_comment(&self) -> String {
        format!(
            "# swp-clock v{}; args: {}",
            env!("CARGO_PKG_VERSION"),
            self.canonical_args()
        )
    }
}

/// Formats like C's `%.12e`: `1.500000000000e-01`, `nan`, `-inf`.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{x:.12e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

fn join(fields: &[f64]) -> String {
    fields
        .iter()
        .map(|&x| format_float(x))
        .collect::<Vec<_>>()
        .join(",")
}

fn stationary_row(spec: &SweepSpec, ctx: &ScatteringContext, a: f64) -> Result<String, SweepError> {
    let barrier = BarrierConfig::new(spec.v0, spec.v1, a)
        .map_err(|source| SweepError::Physics { a, source })?;
    let k1 = spec.particle.wave_number(ctx);
    let t = stationary_times(ctx, &barrier, k1).map_err(|source| match source {
        Error::TransmissionUndefined { energy, v1 } => SweepError::TransmissionUndefined {
            a,
            energy: match spec.particle {
                Particle::Energy(e) => e,
                Particle::WaveNumber(_) => energy,
            },
            v1,
        },
        source => SweepError::Physics { a, source },
    })?;
    let regime = wave_numbers(ctx, &barrier, k1)
        .map_err(|source| SweepError::Physics { a, source })?
        .regime;
    Ok(format!(
        "{},{},{}",
        join(&[a, k1]),
        regime.as_str(),
        join(&[t.t_coeff, t.r_coeff, t.t_ct, t.t_0, t.t_cr, t.tau_d])
    ))
}

fn ensemble_row(spec: &SweepSpec, ctx: &ScatteringContext, a: f64) -> Result<String, SweepError> {
    let shape = spec.packet.expect("ensemble sweep has a packet");
    let k0 = spec.particle.wave_number(ctx);
    let packet = GaussianPacket::new(k0, shape.sigma, shape.z0)
        .map_err(|source| SweepError::Physics { a, source })?;
    let barrier = BarrierConfig::new(spec.v0, spec.v1, a)
        .map_err(|source| SweepError::Physics { a, source })?;
    let avg =
        ensemble_averages(&packet, ctx, &barrier, &spec.quad).map_err(|source| match source {
            Error::QuadratureFailure { .. } => SweepError::Quadrature { a, source },
            source => SweepError::Physics { a, source },
        })?;
    let phys = |source| SweepError::Physics { a, source };
    let (stat_tct, stat_tcr, stat_taud) =
        match wave_numbers(ctx, &barrier, k0).map_err(phys)?.regime {
            Regime::BelowRightLevel => {
                let r = reflection_times(ctx, &barrier, k0).map_err(phys)?;
                (f64::NAN, r.t_cr, r.tau_d)
            }
            _ => {
                let t = stationary_times(ctx, &barrier, k0).map_err(phys)?;
                (t.t_ct, t.t_cr, t.tau_d)
            }
        };
    Ok(join(&[
        a,
        avg.p_t,
        avg.p_r,
        avg.avg_tct,
        avg.avg_tcr,
        avg.avg_taud_t,
        avg.avg_taud_r,
        stat_tct,
        stat_tcr,
        stat_taud,
        avg.negk_weight,
    ]))
}

/// Computes the full CSV text (comment, column header, rows) in memory.
pub fn sweep_csv(spec: &SweepSpec) -> Result<String, SweepError> {
    spec.validate()?;
    let ctx = spec.context();
    let widths = spec.widths();
    let row = |a: f64| match spec.mode {
        Mode::Stationary => stationary_row(spec, &ctx, a),
        Mode::Ensemble => ensemble_row(spec, &ctx, a),
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = spec.threads {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| SweepError::Usage(UsageError(format!("cannot start worker pool: {e}"))))?;
    let rows: Vec<Result<String, SweepError>> =
        pool.install(|| widths.par_iter().map(|&a| row(a)).collect());

    let mut out = String::new();
    writeln!(out, "{}", spec.header_comment()).unwrap();
    writeln!(
        out,
        "{}",
        match spec.mode {
            Mode::Stationary => STATIONARY_COLUMNS,
            Mode::Ensemble => ENSEMBLE_COLUMNS,
        }
    )
    .unwrap();
    for r in rows {
        writeln!(out, "{}", r?).unwrap();
    }
    Ok(out)
}

/// Checks a stationary CSV body: strictly ascending widths, `T + R = 1` and
/// the dwell-time identity on every row. Ensemble files only get the
/// ordering check.
pub fn validate_csv(text: &str) -> Result<usize, SweepError> {
    let fail = |m: String| Err(SweepError::Validation(m));
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = match lines.next() {
        Some(h) => h,
        None => return fail("missing column header".into()),
    };
    let stationary = header == STATIONARY_COLUMNS;
    if !stationary && header != ENSEMBLE_COLUMNS {
        return fail(format!("unexpected header {header:?}"));
    }
    let mut previous = f64::NEG_INFINITY;
    let mut count = 0;
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        let num = |i: usize| fields.get(i).and_then(|f| f.parse::<f64>().ok());
        let a = match num(0) {
            Some(a) => a,
            None => return fail(format!("unparsable row {line:?}")),
        };
        if !(a > previous) {
            return fail(format!("widths not ascending at a = {a}"));
        }
        previous = a;
        if stationary {
            let (t, r, t_ct, t_cr, tau_d) = match (num(3), num(4), num(5), num(7), num(8)) {
                (Some(t), Some(r), Some(x), Some(y), Some(z)) => (t, r, x, y, z),
                _ => return fail(format!("unparsable row {line:?}")),
            };
            if !((t + r - 1.0).abs() <= VALIDATION_TOLERANCE) {
                return fail(format!("T + R = {} at a = {a}", t + r));
            }
            let scale = tau_d
                .abs()
                .max((t * t_ct).abs())
                .max((r * t_cr).abs())
                .max(1.0);
            let gap = tau_d - (t * t_ct + r * t_cr);
            if !(gap.abs() <= VALIDATION_TOLERANCE * scale) {
                return fail(format!("dwell-time identity off by {gap:e} at a = {a}"));
            }
        }
        count += 1;
    }
    Ok(count)
}

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> SweepError + '_ {
    move |source| SweepError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Runs the sweep and atomically writes the CSV to `spec.out_path`.
/// Returns the number of data rows. Nothing is left on disk on failure.
pub fn run_sweep(spec: &SweepSpec) -> Result<usize, SweepError> {
    let text = sweep_csv(spec)?;
    let path = &spec.out_path;
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(io_error(&dir))?;
    tmp.write_all(text.as_bytes())
        .map_err(io_error(tmp.path()))?;
    tmp.flush().map_err(io_error(path))?;
    let written = std::fs::read_to_string(tmp.path()).map_err(io_error(path))?;
    let rows = validate_csv(&written)?;
    if rows != spec.a_steps {
        return Err(SweepError::Validation(format!(
            "wrote {rows} rows, expected {}",
            spec.a_steps
        )));
    }
    tmp.persist(path).map_err(|e| SweepError::Io {
        path: path.clone(),
        source: e.error,
    })?;
    Ok(rows)
}

/// Entry point of the `swp-clock` binary; returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    if let Err(e) = Cli::try_parse_from(&argv) {
        if matches!(
            e.kind(),
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
        ) {
            let _ = e.print();
            return 0;
        }
    }
    let spec = match parse_cli(&argv) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("swp-clock: {e}");
            return 2;
        }
    };
    match run_sweep(&spec) {
        Ok(_) => 0,
        Err(e) => {
            eprintln!("swp-clock: {e}");
            e.exit_code()
        }
    }
}
