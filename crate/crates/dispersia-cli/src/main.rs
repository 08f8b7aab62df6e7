//! Command-line front end for the dispersia library: snapshots and
//! space-time tables of switched carrier fields, envelope profiles,
//! finite-difference oracle runs, and the built-in verification suites.
//!
//! All field output is CSV with a `#`-prefixed metadata header, values
//! printed to 16 significant digits. Grids are evaluated in parallel
//! over points but assembled in axis order, so identical flags produce
//! byte-identical output regardless of the worker count (cap it with
//! the `DISPERSIA_THREADS` environment variable).

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use dispersia::approx_general::{envelope_approx, envelope_approx_off, u_approx, u_approx_off};
use dispersia::closed_form::{
    envelope_off, envelope_on, u_burst, u_nondispersive, u_nondispersive_off, u_quadratic,
    u_quadratic_off, BurstEvaluator,
};
use dispersia::grid::{FieldGrid, GridMeta};
use dispersia::pde_oracle::{solve, FarBoundary, OracleConfig, Pde};
use dispersia::pv_quadrature::{u_integral, PvQuadratureConfig, TailMode};
use dispersia::verify::{run_suite, Suite};
use dispersia::{DispersionRelation, SourceSignal, SwitchingPattern};

/// A pointwise evaluator u(x, t), shareable across worker threads.
type PointFn = Box<dyn Fn(f64, f64) -> Result<f64> + Sync>;

#[derive(Parser)]
#[command(
    name = "dispersia",
    version,
    about = "Switched carrier waves in dispersive media: closed forms, \
             front approximations, direct quadrature, and finite-difference oracles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample u(x) at one instant as CSV rows `x,u`.
    Snapshot(SnapshotArgs),
    /// Sample u(x, t) on a space-time lattice as CSV rows `x,t,u`.
    Spacetime(SpacetimeArgs),
    /// Sample the modulation envelope at one instant as CSV rows `x,envelope`.
    Envelope(EnvelopeArgs),
    /// March a finite-difference solver and emit its stored history.
    Oracle(OracleArgs),
    /// Run the verification suites and report each check against its bound.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DispersionKind {
    /// ω = c·k: every wavelength travels at the same speed.
    Nondispersive,
    /// ω = D·k²: curvature spreads the switch front into oscillations.
    Quadratic,
    /// ω = √(ω₀² + c²k²): propagation with a low-frequency cutoff.
    KleinGordon,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeKind {
    /// Source silent for t < 0, emitting A·sin(Ωt) afterwards.
    On,
    /// Source emitting since forever, silenced at t = 0.
    Off,
    /// Source emitting exactly n full cycles starting at t = 0.
    Burst,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodKind {
    /// Closed-form solution (nondispersive and quadratic media only).
    Exact,
    /// Fresnel front approximation, valid for any even relation.
    Approx,
    /// Direct principal-value quadrature of the superposition integral.
    Pv,
    /// Finite-difference reference solution (see the `oracle` subcommand).
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TailKind {
    /// Stop the integral at the truncation wavenumber.
    Truncate,
    /// Estimate the remainder by averaged half-period cell sums.
    Average,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PdeKind {
    /// u_tt = c²·u_xx.
    Wave,
    /// u_tt = −D²·u_xxxx.
    Beam,
    /// u_tt = c²·u_xx − ω₀²·u.
    KleinGordon,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FarKind {
    /// Hold the far end at zero (size the domain so reflections stay away).
    ClampedZero,
    /// Let outgoing waves leave: outflow condition plus a damping sponge.
    AbsorbingPad,
}

#[derive(Args)]
struct MediumArgs {
    /// Dispersion relation of the medium.
    #[arg(long, value_enum, default_value_t = DispersionKind::Quadratic)]
    dispersion: DispersionKind,

    /// Propagation speed c (nondispersive and klein-gordon media).
    #[arg(long, default_value_t = 1.0)]
    c: f64,

    /// Dispersion coefficient of ω = D·k² (quadratic medium).
    #[arg(long = "D", default_value_t = 1.0)]
    d: f64,

    /// Cutoff frequency ω₀ (klein-gordon medium).
    #[arg(long, default_value_t = 1.0)]
    omega0: f64,
}

impl MediumArgs {
    fn relation(&self) -> Result<DispersionRelation> {
        let rel = match self.dispersion {
            DispersionKind::Nondispersive => DispersionRelation::nondispersive(self.c),
            DispersionKind::Quadratic => DispersionRelation::quadratic(self.d),
            DispersionKind::KleinGordon => DispersionRelation::klein_gordon(self.c, self.omega0),
        };
        Ok(rel?)
    }

    /// Span of one dimensionless time unit: t = t*·unit. The carrier
    /// period sets the clock except under a cutoff, where the cutoff
    /// frequency does.
    fn time_unit(&self, omega: f64) -> f64 {
        match self.dispersion {
            DispersionKind::KleinGordon => 1.0 / self.omega0,
            _ => 1.0 / omega,
        }
    }

    /// Span of one dimensionless position unit: x = x*·unit. The
    /// carrier wavenumber sets the ruler except under a cutoff, where
    /// c/ω₀ does.
    fn length_unit(&self, omega: f64) -> f64 {
        match self.dispersion {
            DispersionKind::Nondispersive => self.c / omega,
            DispersionKind::Quadratic => (self.d / omega).sqrt(),
            DispersionKind::KleinGordon => self.c / self.omega0,
        }
    }

    fn describe(&self) -> String {
        match self.dispersion {
            DispersionKind::Nondispersive => format!("nondispersive c={}", self.c),
            DispersionKind::Quadratic => format!("quadratic D={}", self.d),
            DispersionKind::KleinGordon => {
                format!("klein-gordon c={} omega0={}", self.c, self.omega0)
            }
        }
    }
}

#[derive(Args)]
struct SourceArgs {
    /// Source amplitude A.
    #[arg(long = "A", default_value_t = 1.0)]
    amplitude: f64,

    /// Source angular frequency Ω.
    #[arg(long, default_value_t = 1.0)]
    omega: f64,

    /// Switching pattern of the boundary source.
    #[arg(long, value_enum, default_value_t = ModeKind::On)]
    mode: ModeKind,

    /// Number of full carrier cycles (required by --mode burst).
    #[arg(long)]
    n: Option<u32>,
}

impl SourceArgs {
    fn signal(&self) -> Result<SourceSignal> {
        let pattern = match (self.mode, self.n) {
            (ModeKind::Burst, Some(n)) => SwitchingPattern::Burst(n),
            (ModeKind::Burst, None) => {
                bail!("--mode burst needs --n, the number of carrier cycles")
            }
            (_, Some(_)) => bail!("--n applies only to --mode burst"),
            (ModeKind::On, None) => SwitchingPattern::OffToOn,
            (ModeKind::Off, None) => SwitchingPattern::OnToOff,
        };
        Ok(SourceSignal::new(self.amplitude, self.omega, pattern)?)
    }

    fn describe(&self) -> String {
        let mode = match (self.mode, self.n) {
            (ModeKind::On, _) => "on".to_string(),
            (ModeKind::Off, _) => "off".to_string(),
            (ModeKind::Burst, n) => format!("burst n={}", n.unwrap_or(0)),
        };
        format!("A={} omega={} mode={mode}", self.amplitude, self.omega)
    }
}

#[derive(Args)]
struct PvArgs {
    /// Half-width of the excised window around the pole (default K/100).
    #[arg(long)]
    pv_epsilon: Option<f64>,

    /// Truncation wavenumber of the integral (default max(8K, 40/x)).
    #[arg(long)]
    pv_kmax: Option<f64>,

    /// Absolute error budget per integral piece, in (0, 1e-3].
    #[arg(long)]
    pv_tol: Option<f64>,

    /// Treatment of the tail beyond the truncation wavenumber.
    #[arg(long, value_enum)]
    pv_tail: Option<TailKind>,
}

impl PvArgs {
    fn any_set(&self) -> bool {
        self.pv_epsilon.is_some()
            || self.pv_kmax.is_some()
            || self.pv_tol.is_some()
            || self.pv_tail.is_some()
    }

    fn config(&self) -> PvQuadratureConfig {
        PvQuadratureConfig {
            epsilon: self.pv_epsilon,
            k_max: self.pv_kmax,
            panel_tol: self.pv_tol.unwrap_or(1e-8),
            tail_mode: match self.pv_tail.unwrap_or(TailKind::Average) {
                TailKind::Truncate => TailMode::Truncate,
                TailKind::Average => TailMode::AverageExtrapolate,
            },
        }
    }
}

#[derive(Args)]
struct InstantArgs {
    /// Sample time (dimensional units).
    #[arg(long, conflicts_with = "t_star")]
    t: Option<f64>,

    /// Sample time in carrier units: t* = Ω·t (klein-gordon: t* = ω₀·t).
    #[arg(long)]
    t_star: Option<f64>,
}

impl InstantArgs {
    fn resolve(&self, medium: &MediumArgs, omega: f64) -> Result<f64> {
        let t = match (self.t, self.t_star) {
            (Some(t), None) => t,
            (None, Some(t_star)) => t_star * medium.time_unit(omega),
            (None, None) => bail!("pass a sample time: --t or --t-star"),
            (Some(_), Some(_)) => unreachable!("the parser rejects the combination"),
        };
        ensure!(t.is_finite(), "the sample time must be finite");
        Ok(t)
    }
}

#[derive(Args)]
struct SpanArgs {
    /// Largest sampled position (dimensional units).
    #[arg(long, conflicts_with = "x_star_max")]
    x_max: Option<f64>,

    /// Largest sampled position in carrier units (default 40).
    #[arg(long)]
    x_star_max: Option<f64>,

    /// Number of positions sampled uniformly from 0 to the maximum.
    #[arg(long, default_value_t = 200)]
    points: usize,
}

impl SpanArgs {
    fn positions(&self, medium: &MediumArgs, omega: f64) -> Result<Vec<f64>> {
        ensure!(self.points >= 2, "--points must be at least 2");
        let x_max = match (self.x_max, self.x_star_max) {
            (Some(x), None) => x,
            (None, Some(x_star)) => x_star * medium.length_unit(omega),
            (None, None) => 40.0 * medium.length_unit(omega),
            (Some(_), Some(_)) => unreachable!("the parser rejects the combination"),
        };
        ensure!(
            x_max.is_finite() && x_max > 0.0,
            "the position span must be positive and finite"
        );
        let last = (self.points - 1) as f64;
        Ok((0..self.points).map(|i| x_max * i as f64 / last).collect())
    }
}

#[derive(Args)]
struct SnapshotArgs {
    #[command(flatten)]
    medium: MediumArgs,
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    instant: InstantArgs,
    #[command(flatten)]
    span: SpanArgs,
    #[command(flatten)]
    pv: PvArgs,

    /// Evaluation method for the field.
    #[arg(long, value_enum, default_value_t = MethodKind::Exact)]
    method: MethodKind,

    /// Append the modulation envelope as a third column.
    #[arg(long)]
    envelope: bool,

    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpacetimeArgs {
    #[command(flatten)]
    medium: MediumArgs,
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    span: SpanArgs,
    #[command(flatten)]
    pv: PvArgs,

    /// Latest sampled time (dimensional units).
    #[arg(long, conflicts_with = "t_star_max")]
    t_max: Option<f64>,

    /// Latest sampled time in carrier units (default 25).
    #[arg(long)]
    t_star_max: Option<f64>,

    /// Number of times sampled uniformly from 0 to the maximum.
    #[arg(long, default_value_t = 120)]
    t_points: usize,

    /// Evaluation method for the field.
    #[arg(long, value_enum, default_value_t = MethodKind::Exact)]
    method: MethodKind,

    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl SpacetimeArgs {
    fn times(&self) -> Result<Vec<f64>> {
        ensure!(self.t_points >= 2, "--t-points must be at least 2");
        let t_max = match (self.t_max, self.t_star_max) {
            (Some(t), None) => t,
            (None, Some(t_star)) => t_star * self.medium.time_unit(self.source.omega),
            (None, None) => 25.0 * self.medium.time_unit(self.source.omega),
            (Some(_), Some(_)) => unreachable!("the parser rejects the combination"),
        };
        ensure!(
            t_max.is_finite() && t_max > 0.0,
            "the time span must be positive and finite"
        );
        let last = (self.t_points - 1) as f64;
        Ok((0..self.t_points)
            .map(|i| t_max * i as f64 / last)
            .collect())
    }
}

#[derive(Args)]
struct EnvelopeArgs {
    #[command(flatten)]
    medium: MediumArgs,
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    instant: InstantArgs,
    #[command(flatten)]
    span: SpanArgs,

    /// Evaluation method for the envelope.
    #[arg(long, value_enum, default_value_t = MethodKind::Exact)]
    method: MethodKind,

    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    source: SourceArgs,

    /// Equation to march.
    #[arg(long, value_enum)]
    pde: PdeKind,

    /// Wave speed c (wave and klein-gordon equations).
    #[arg(long, default_value_t = 1.0)]
    c: f64,

    /// Beam coefficient of u_tt = −D²·u_xxxx.
    #[arg(long = "D", default_value_t = 1.0)]
    d: f64,

    /// Cutoff frequency ω₀ (klein-gordon equation).
    #[arg(long, default_value_t = 1.0)]
    omega0: f64,

    /// Spatial step.
    #[arg(long)]
    dx: f64,

    /// Time step.
    #[arg(long)]
    dt: f64,

    /// Domain length.
    #[arg(long)]
    length: f64,

    /// Final marched time.
    #[arg(long)]
    duration: f64,

    /// Treatment of the far end of the domain.
    #[arg(long, value_enum, default_value_t = FarKind::ClampedZero)]
    far_boundary: FarKind,

    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run only this suite (repeatable); default is every suite.
    #[arg(long = "suite")]
    suites: Vec<String>,

    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    configure_threads()?;
    match &cli.command {
        Command::Snapshot(args) => run_snapshot(args).map(|()| ExitCode::SUCCESS),
        Command::Spacetime(args) => run_spacetime(args).map(|()| ExitCode::SUCCESS),
        Command::Envelope(args) => run_envelope(args).map(|()| ExitCode::SUCCESS),
        Command::Oracle(args) => run_oracle(args).map(|()| ExitCode::SUCCESS),
        Command::Verify(args) => run_verify(args),
    }
}

/// Cap the worker pool when DISPERSIA_THREADS is set; otherwise rayon
/// sizes it to the machine. Output never depends on the worker count.
fn configure_threads() -> Result<()> {
    let Some(raw) = std::env::var_os("DISPERSIA_THREADS") else {
        return Ok(());
    };
    let raw = raw.to_string_lossy();
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .with_context(|| format!("DISPERSIA_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("the worker pool was already configured")?;
    Ok(())
}

fn method_name(method: MethodKind) -> &'static str {
    match method {
        MethodKind::Exact => "exact",
        MethodKind::Approx => "approx",
        MethodKind::Pv => "pv",
        MethodKind::Oracle => "oracle",
    }
}

/// Build the pointwise field evaluator selected by --method and --mode.
///
/// The quadrature produces the switch-on field, so its switch-off
/// variant uses the complement identity u_off = A·sin(Ωt − Kx) − u_on.
fn field_function(
    medium: &MediumArgs,
    source: &SourceArgs,
    method: MethodKind,
    pv: &PvArgs,
) -> Result<PointFn> {
    if pv.any_set() && method != MethodKind::Pv {
        bail!("--pv-* options apply only to --method pv");
    }
    let src = source.signal()?;
    let rel = medium.relation()?;
    match (method, src.pattern()) {
        (MethodKind::Oracle, _) => bail!(
            "field sampling with the finite-difference method needs explicit \
             discretization flags; use the `oracle` subcommand"
        ),
        (MethodKind::Exact, pattern) => match medium.dispersion {
            DispersionKind::Nondispersive => {
                let c = medium.c;
                Ok(match pattern {
                    SwitchingPattern::OffToOn => {
                        Box::new(move |x, t| Ok(u_nondispersive(&src, c, x, t)))
                    }
                    SwitchingPattern::OnToOff => {
                        Box::new(move |x, t| Ok(u_nondispersive_off(&src, c, x, t)))
                    }
                    SwitchingPattern::Burst(_) => {
                        let evaluator = BurstEvaluator::ExactNondispersive;
                        Box::new(move |x, t| Ok(u_burst(&src, &rel, x, t, &evaluator)?))
                    }
                })
            }
            DispersionKind::Quadratic => {
                let d = medium.d;
                Ok(match pattern {
                    SwitchingPattern::OffToOn => {
                        Box::new(move |x, t| Ok(u_quadratic(&src, d, x, t)))
                    }
                    SwitchingPattern::OnToOff => {
                        Box::new(move |x, t| Ok(u_quadratic_off(&src, d, x, t)))
                    }
                    SwitchingPattern::Burst(_) => {
                        let evaluator = BurstEvaluator::ExactQuadratic;
                        Box::new(move |x, t| Ok(u_burst(&src, &rel, x, t, &evaluator)?))
                    }
                })
            }
            DispersionKind::KleinGordon => bail!(
                "no exact closed form exists for the klein-gordon medium; \
                 use --method approx or --method pv, or the `oracle` subcommand"
            ),
        },
        (MethodKind::Approx, SwitchingPattern::OffToOn) => {
            Ok(Box::new(move |x, t| Ok(u_approx(&src, &rel, x, t)?)))
        }
        (MethodKind::Approx, SwitchingPattern::OnToOff) => {
            Ok(Box::new(move |x, t| Ok(u_approx_off(&src, &rel, x, t)?)))
        }
        (MethodKind::Approx, SwitchingPattern::Burst(_)) => {
            let evaluator = BurstEvaluator::Approximate;
            Ok(Box::new(move |x, t| {
                Ok(u_burst(&src, &rel, x, t, &evaluator)?)
            }))
        }
        (MethodKind::Pv, SwitchingPattern::OffToOn) => {
            let cfg = pv.config();
            Ok(Box::new(move |x, t| {
                Ok(u_integral(&src, &rel, x, t, &cfg)?)
            }))
        }
        (MethodKind::Pv, SwitchingPattern::OnToOff) => {
            let cfg = pv.config();
            let k = rel.wavenumber_for(src.omega())?;
            let on_source = src.with_pattern(SwitchingPattern::OffToOn);
            Ok(Box::new(move |x, t| {
                let on = u_integral(&on_source, &rel, x, t, &cfg)?;
                Ok(on_source.amplitude() * (on_source.omega() * t - k * x).sin() - on)
            }))
        }
        (MethodKind::Pv, SwitchingPattern::Burst(_)) => {
            let evaluator = BurstEvaluator::PvQuadrature(pv.config());
            Ok(Box::new(move |x, t| {
                Ok(u_burst(&src, &rel, x, t, &evaluator)?)
            }))
        }
    }
}

/// Build the pointwise envelope evaluator. The quadratic medium has a
/// closed-form envelope; the front approximation covers every even
/// relation and is exact when the curvature vanishes, so it doubles as
/// the exact envelope of the nondispersive medium. The quadrature and
/// finite-difference methods produce the oscillating field itself and
/// have no envelope.
fn envelope_function(
    medium: &MediumArgs,
    source: &SourceArgs,
    method: MethodKind,
) -> Result<PointFn> {
    let src = source.signal()?;
    let rel = medium.relation()?;
    let off = match src.pattern() {
        SwitchingPattern::OffToOn => false,
        SwitchingPattern::OnToOff => true,
        SwitchingPattern::Burst(_) => bail!(
            "the envelope is defined for --mode on and --mode off; \
             a burst has no single modulation front"
        ),
    };
    match method {
        MethodKind::Exact => match medium.dispersion {
            DispersionKind::Quadratic => {
                let d = medium.d;
                Ok(if off {
                    Box::new(move |x, t| Ok(envelope_off(&src, d, x, t)))
                } else {
                    Box::new(move |x, t| Ok(envelope_on(&src, d, x, t)))
                })
            }
            DispersionKind::Nondispersive => Ok(approx_envelope_fn(src, rel, off)),
            DispersionKind::KleinGordon => {
                bail!("no exact envelope exists for the klein-gordon medium; use --method approx")
            }
        },
        MethodKind::Approx => Ok(approx_envelope_fn(src, rel, off)),
        MethodKind::Pv | MethodKind::Oracle => bail!(
            "the envelope comes from --method exact or approx; \
             the pv and oracle methods produce the raw field"
        ),
    }
}

fn approx_envelope_fn(src: SourceSignal, rel: DispersionRelation, off: bool) -> PointFn {
    if off {
        Box::new(move |x, t| Ok(envelope_approx_off(&src, &rel, x, t)?))
    } else {
        Box::new(move |x, t| Ok(envelope_approx(&src, &rel, x, t)?))
    }
}

/// Evaluate `f` over the lattice in parallel, assembling the values
/// time-major so the output is identical for any worker count.
fn evaluate_lattice(f: &PointFn, xs: &[f64], ts: &[f64]) -> Result<Vec<f64>> {
    let nx = xs.len();
    (0..nx * ts.len())
        .into_par_iter()
        .map(|idx| f(xs[idx % nx], ts[idx / nx]))
        .collect()
}

fn with_output<F>(out: Option<&PathBuf>, emit: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    match out {
        Some(path) => {
            let file =
                File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
            let mut writer = BufWriter::new(file);
            emit(&mut writer)?;
            writer.flush()?;
            Ok(())
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            emit(&mut lock)
        }
    }
}

fn run_snapshot(args: &SnapshotArgs) -> Result<()> {
    let t = args.instant.resolve(&args.medium, args.source.omega)?;
    let xs = args.span.positions(&args.medium, args.source.omega)?;
    let field = field_function(&args.medium, &args.source, args.method, &args.pv)?;
    let values = evaluate_lattice(&field, &xs, &[t])?;

    let envelope = if args.envelope {
        ensure!(
            t > 0.0,
            "--envelope needs t > 0: the modulation front exists only after switching"
        );
        let envelope = envelope_function(&args.medium, &args.source, args.method)?;
        Some(evaluate_lattice(&envelope, &xs, &[t])?)
    } else {
        None
    };

    let meta = GridMeta::new(
        args.medium.describe(),
        args.source.describe(),
        method_name(args.method),
    )
    .with("t", format!("{t}"))
    .with(
        "t-star",
        format!("{}", t / args.medium.time_unit(args.source.omega)),
    )
    .with("points", format!("{}", args.span.points));
    let grid = FieldGrid::new(xs, vec![t], values, meta)?;
    with_output(args.out.as_ref(), |w| {
        let extra = envelope.as_deref().map(|column| ("envelope", column));
        grid.write_snapshot_csv(w, 0, extra)?;
        Ok(())
    })
}

fn run_spacetime(args: &SpacetimeArgs) -> Result<()> {
    let xs = args.span.positions(&args.medium, args.source.omega)?;
    let ts = args.times()?;
    let field = field_function(&args.medium, &args.source, args.method, &args.pv)?;
    let values = evaluate_lattice(&field, &xs, &ts)?;

    let meta = GridMeta::new(
        args.medium.describe(),
        args.source.describe(),
        method_name(args.method),
    )
    .with("points", format!("{}", args.span.points))
    .with("t-points", format!("{}", args.t_points));
    let grid = FieldGrid::new(xs, ts, values, meta)?;
    with_output(args.out.as_ref(), |w| {
        grid.write_spacetime_csv(w)?;
        Ok(())
    })
}

fn run_envelope(args: &EnvelopeArgs) -> Result<()> {
    let t = args.instant.resolve(&args.medium, args.source.omega)?;
    ensure!(
        t > 0.0,
        "the envelope needs t > 0: the modulation front exists only after switching"
    );
    let xs = args.span.positions(&args.medium, args.source.omega)?;
    let envelope = envelope_function(&args.medium, &args.source, args.method)?;
    let values = evaluate_lattice(&envelope, &xs, &[t])?;

    let meta = GridMeta::new(
        args.medium.describe(),
        args.source.describe(),
        method_name(args.method),
    )
    .with("t", format!("{t}"))
    .with(
        "t-star",
        format!("{}", t / args.medium.time_unit(args.source.omega)),
    )
    .with("points", format!("{}", args.span.points));
    with_output(args.out.as_ref(), |w| {
        meta.write_header(w)?;
        writeln!(w, "x,envelope")?;
        for (x, value) in xs.iter().zip(&values) {
            writeln!(w, "{x:.15e},{value:.15e}")?;
        }
        Ok(())
    })
}

fn run_oracle(args: &OracleArgs) -> Result<()> {
    let src = args.source.signal()?;
    let pde = match args.pde {
        PdeKind::Wave => Pde::Wave { c: args.c },
        PdeKind::Beam => Pde::Beam { d: args.d },
        PdeKind::KleinGordon => Pde::KleinGordon {
            c: args.c,
            omega0: args.omega0,
        },
    };
    let cfg = OracleConfig {
        pde,
        far_boundary: match args.far_boundary {
            FarKind::ClampedZero => FarBoundary::ClampedZero,
            FarKind::AbsorbingPad => FarBoundary::AbsorbingPad,
        },
        dx: args.dx,
        dt: args.dt,
        domain_length: args.length,
        duration: args.duration,
    };
    let grid = solve(&cfg, &src)?;
    with_output(args.out.as_ref(), |w| {
        grid.write_spacetime_csv(w)?;
        Ok(())
    })
}

fn run_verify(args: &VerifyArgs) -> Result<ExitCode> {
    let suites: Vec<Suite> = if args.suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        args.suites
            .iter()
            .map(|name| {
                Suite::from_name(name).ok_or_else(|| {
                    let valid = Suite::ALL
                        .iter()
                        .map(|suite| suite.name())
                        .collect::<Vec<_>>()
                        .join(", ");
                    anyhow::anyhow!("unknown suite {name:?}; valid names: {valid}")
                })
            })
            .collect::<Result<_>>()?
    };

    let mut report = String::new();
    let mut passed = 0usize;
    let mut total = 0usize;
    for suite in suites {
        for check in run_suite(suite) {
            total += 1;
            passed += usize::from(check.passed);
            report.push_str(&check.to_string());
            report.push('\n');
        }
    }
    report.push_str(&format!("{passed} of {total} checks passed\n"));
    with_output(args.out.as_ref(), |w| {
        w.write_all(report.as_bytes())?;
        Ok(())
    })?;
    Ok(if passed == total {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
