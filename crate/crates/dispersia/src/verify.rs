//! Self-measurement suites: every quantitative claim this crate makes
//! about its own numerics, packaged as named checks with pinned bounds.
//!
//! Each check measures one number — a sup-norm deviation over a grid or
//! a set of seeded random draws, a convergence ratio, an amplitude —
//! and compares it against a bound compiled into this file. All inputs
//! are deterministic: random draws come from fixed seeds and parallel
//! reductions are order-independent, so a suite reports identical
//! numbers on every run and every thread count.
//!
//! The CLI `verify` subcommand and the acceptance tests print these
//! results as one pass/fail line per check and derive their exit status
//! from [`CheckResult::passed`]. A failed evaluation (an error from a
//! fallible evaluator) surfaces as an infinite measurement, which can
//! never satisfy its bound.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::approx_general::u_approx;
use crate::closed_form::{
    envelope_front_slope, envelope_on, front_amplitude_asymptotic, front_oscillation, u_burst,
    u_nondispersive, u_nondispersive_off, u_quadratic, u_quadratic_off, BurstEvaluator,
};
use crate::dispersion::{DispersionRelation, SourceSignal, SwitchingPattern};
use crate::pde_oracle::{solve, FarBoundary, OracleConfig, Pde};
use crate::pv_quadrature::{
    fourier_sine_refs, pv_integrate, u_integral, PvIntegrand, PvQuadratureConfig, SineKernel,
};
use crate::special_functions::{fresnel, fresnel_asymptotic};

/// The named measurement suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    /// Fresnel functions: symmetry, derivative, limits, asymptotics.
    Fresnel,
    /// Quadrature engine against integrals with known closed forms.
    ReferenceIntegrals,
    /// Closed-form fields against direct quadrature of the field integral.
    ClosedVsPv,
    /// Beam finite-difference oracle against the quadratic closed form.
    OracleBeam,
    /// Front location and the front oscillation amplitude law.
    Wavefront,
    /// Envelope slope at the front and profile collapse under √t scaling.
    BoundaryThickness,
    /// Limits in which the general approximation must degenerate exactly.
    ApproxSpecializations,
    /// General approximation against the Klein–Gordon oracle.
    KleinGordon,
    /// Switch-off complement, burst boundary traces, far-field decay.
    OnOffBurst,
}

impl Suite {
    /// Every suite, in the order `run_all` executes them.
    pub const ALL: [Suite; 9] = [
        Suite::Fresnel,
        Suite::ReferenceIntegrals,
        Suite::ClosedVsPv,
        Suite::OracleBeam,
        Suite::Wavefront,
        Suite::BoundaryThickness,
        Suite::ApproxSpecializations,
        Suite::KleinGordon,
        Suite::OnOffBurst,
    ];

    /// Stable kebab-case identifier, used by the CLI `--suite` flag.
    pub fn name(self) -> &'static str {
        match self {
            Suite::Fresnel => "fresnel",
            Suite::ReferenceIntegrals => "reference-integrals",
            Suite::ClosedVsPv => "closed-vs-pv",
            Suite::OracleBeam => "oracle-beam",
            Suite::Wavefront => "wavefront",
            Suite::BoundaryThickness => "boundary-thickness",
            Suite::ApproxSpecializations => "approx-specializations",
            Suite::KleinGordon => "klein-gordon",
            Suite::OnOffBurst => "on-off-burst",
        }
    }

    /// Inverse of [`Suite::name`].
    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|suite| suite.name() == name)
    }
}

/// Direction of a check's bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// The measurement must not exceed the bound (error norms).
    AtMost,
    /// The measurement must reach the bound (convergence ratios,
    /// amplitudes that must be present).
    AtLeast,
}

/// One named measurement compared against its pinned bound.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: &'static str,
    pub measured: f64,
    pub bound: f64,
    pub relation: Relation,
    pub passed: bool,
}

impl CheckResult {
    fn new(
        suite: Suite,
        name: &'static str,
        measured: f64,
        relation: Relation,
        bound: f64,
    ) -> Self {
        let passed = match relation {
            Relation::AtMost => measured <= bound,
            Relation::AtLeast => measured >= bound,
        };
        Self {
            suite,
            name,
            measured,
            bound,
            relation,
            passed,
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let requirement = match self.relation {
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
        };
        write!(
            f,
            "[{status}] {}/{}: measured {:.6e}, required {requirement} {:.3e}",
            self.suite.name(),
            self.name,
            self.measured,
            self.bound
        )
    }
}

/// Run one suite and return its check results.
pub fn run_suite(suite: Suite) -> Vec<CheckResult> {
    match suite {
        Suite::Fresnel => fresnel_suite(),
        Suite::ReferenceIntegrals => reference_integrals_suite(),
        Suite::ClosedVsPv => closed_vs_pv_suite(),
        Suite::OracleBeam => oracle_beam_suite(),
        Suite::Wavefront => wavefront_suite(),
        Suite::BoundaryThickness => boundary_thickness_suite(),
        Suite::ApproxSpecializations => approx_specializations_suite(),
        Suite::KleinGordon => klein_gordon_suite(),
        Suite::OnOffBurst => on_off_burst_suite(),
    }
}

/// Run every suite in [`Suite::ALL`] order.
pub fn run_all() -> Vec<CheckResult> {
    Suite::ALL.into_iter().flat_map(run_suite).collect()
}

fn on_source(amplitude: f64, omega: f64) -> SourceSignal {
    SourceSignal::new(amplitude, omega, SwitchingPattern::OffToOn)
        .expect("suite source parameters are valid")
}

/// Absolute deviation from `expected`, or +∞ when evaluation failed so
/// the enclosing at-most check fails loudly instead of silently.
fn deviation<E>(result: Result<f64, E>, expected: f64) -> f64 {
    result.map_or(f64::INFINITY, |value| (value - expected).abs())
}

fn fold_max(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0_f64, f64::max)
}

/// Argmax of a unimodal function on [a, b] by golden-section search.
fn golden_argmax(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..60 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

fn fresnel_suite() -> Vec<CheckResult> {
    let s = Suite::Fresnel;
    let mut out = Vec::new();

    // C and S are odd; the implementation evaluates |z| and mirrors the
    // sign, so the symmetry must hold bit for bit.
    let mut rng = StdRng::seed_from_u64(0x0001);
    let worst = fold_max((0..500).map(|_| {
        let z = rng.gen_range(0.0_f64..60.0);
        let p = fresnel(z).expect("finite argument");
        let n = fresnel(-z).expect("finite argument");
        (p.c_value + n.c_value)
            .abs()
            .max((p.s_value + n.s_value).abs())
    }));
    out.push(CheckResult::new(
        s,
        "odd-symmetry",
        worst,
        Relation::AtMost,
        0.0,
    ));

    // C′(z) = cos(πz²/2) and S′(z) = sin(πz²/2), checked against a
    // centered finite difference (truncation ~1e-11, rounding ~6e-11).
    let mut rng = StdRng::seed_from_u64(0x0002);
    let h = 1e-6;
    let worst = fold_max((0..200).flat_map(|_| {
        let z = rng.gen_range(-3.0_f64..3.0);
        let hi = fresnel(z + h).expect("finite argument");
        let lo = fresnel(z - h).expect("finite argument");
        let phase = FRAC_PI_2 * z * z;
        [
            ((hi.c_value - lo.c_value) / (2.0 * h) - phase.cos()).abs(),
            ((hi.s_value - lo.s_value) / (2.0 * h) - phase.sin()).abs(),
        ]
    }));
    out.push(CheckResult::new(
        s,
        "derivative-vs-finite-difference",
        worst,
        Relation::AtMost,
        1e-8,
    ));

    // Far from the origin both functions approach ±1/2 with residue
    // below 1/(πz): π·z·|C(z) − 1/2| stays under 1 across a sweep near
    // z = 50 (likewise for S and for the mirrored limits).
    let worst = fold_max((0..=12).flat_map(|i| {
        let z = 47.0 + 0.5 * f64::from(i);
        let p = fresnel(z).expect("finite argument");
        let n = fresnel(-z).expect("finite argument");
        [
            (p.c_value - 0.5).abs(),
            (p.s_value - 0.5).abs(),
            (n.c_value + 0.5).abs(),
            (n.s_value + 0.5).abs(),
        ]
        .map(|residue| PI * z * residue)
    }));
    out.push(CheckResult::new(
        s,
        "half-limit-approach",
        worst,
        Relation::AtMost,
        1.0,
    ));

    // The large-argument form carries an O(1/z³) truncation error, so
    // z³·|asymptotic − reference| must stay bounded over z ∈ [2, 50].
    let n = 4000;
    let worst = fold_max((0..n).map(|i| {
        let z = 2.0 * 25.0_f64.powf(f64::from(i) / f64::from(n - 1));
        let exact = fresnel(z).expect("finite argument");
        let asym = fresnel_asymptotic(z).expect("z >= 2 is inside the asymptotic range");
        (exact.c_value - asym.c_value)
            .abs()
            .max((exact.s_value - asym.s_value).abs())
            * z
            * z
            * z
    }));
    out.push(CheckResult::new(
        s,
        "asymptotic-next-order-bound",
        worst,
        Relation::AtMost,
        0.12,
    ));

    out
}

fn reference_integrals_suite() -> Vec<CheckResult> {
    let s = Suite::ReferenceIntegrals;
    let mut out = Vec::new();

    // ∫₀^∞ sin(kx)/k dk = π/2 for every x > 0.
    let mut rng = StdRng::seed_from_u64(0x0101);
    let worst = fold_max((0..20).map(|_| {
        let x = rng.gen_range(0.3_f64..4.0);
        let value = move |k: f64| (k * x).sin() / k;
        let rate = move |_: f64| x;
        let cfg = PvQuadratureConfig {
            k_max: Some(40.0),
            ..Default::default()
        };
        deviation(
            pv_integrate(
                &PvIntegrand {
                    value: &value,
                    pole: None,
                    numerator: None,
                    tail_rate: Some(&rate),
                },
                &cfg,
            ),
            FRAC_PI_2,
        )
    }));
    out.push(CheckResult::new(
        s,
        "dirichlet-sine",
        worst,
        Relation::AtMost,
        1e-6,
    ));

    // PV ∫₀^∞ cos(αk)/(k² − K²) dk = −(π/2)·sin(|α|K)/K.
    let mut rng = StdRng::seed_from_u64(0x0102);
    let worst = fold_max((0..20).map(|_| {
        let magnitude = rng.gen_range(0.3_f64..2.5);
        let alpha = if rng.gen_bool(0.5) {
            magnitude
        } else {
            -magnitude
        };
        let k_pole = rng.gen_range(0.6_f64..2.8);
        let value = move |k: f64| (alpha * k).cos() / (k * k - k_pole * k_pole);
        let numerator = move |k: f64| (alpha * k).cos() / (k + k_pole);
        let rate = move |_: f64| alpha;
        let expected = -FRAC_PI_2 * (magnitude * k_pole).sin() / k_pole;
        deviation(
            pv_integrate(
                &PvIntegrand {
                    value: &value,
                    pole: Some(k_pole),
                    numerator: Some(&numerator),
                    tail_rate: Some(&rate),
                },
                &PvQuadratureConfig::default(),
            ),
            expected,
        )
    }));
    out.push(CheckResult::new(
        s,
        "cosine-over-pole",
        worst,
        Relation::AtMost,
        1e-6,
    ));

    // PV ∫₀^∞ k·sin(kx)/(k² − K²) dk = (π/2)·cos(Kx). The truncation
    // point rises with 1/x so the tail's half-period cells always
    // resolve the sin(kx) oscillation for the smallest drawn x.
    let mut rng = StdRng::seed_from_u64(0x0103);
    let worst = fold_max((0..20).map(|_| {
        let x = rng.gen_range(0.5_f64..4.0);
        let k_pole = rng.gen_range(0.6_f64..2.5);
        let value = move |k: f64| k * (k * x).sin() / (k * k - k_pole * k_pole);
        let numerator = move |k: f64| k * (k * x).sin() / (k + k_pole);
        let rate = move |_: f64| x;
        let cfg = PvQuadratureConfig {
            k_max: Some((8.0 * k_pole).max(5.0 * PI / x)),
            ..Default::default()
        };
        deviation(
            pv_integrate(
                &PvIntegrand {
                    value: &value,
                    pole: Some(k_pole),
                    numerator: Some(&numerator),
                    tail_rate: Some(&rate),
                },
                &cfg,
            ),
            FRAC_PI_2 * (k_pole * x).cos(),
        )
    }));
    out.push(CheckResult::new(
        s,
        "sine-times-k-over-pole",
        worst,
        Relation::AtMost,
        1e-6,
    ));

    // The two quadratic-phase transforms behind the closed forms:
    // ∫₀^∞ sin/cos(αk²)·sin(βk)/k dk against their Fresnel expressions.
    let mut rng = StdRng::seed_from_u64(0x0104);
    let worst = fold_max((0..20).flat_map(|_| {
        let magnitude = rng.gen_range(0.4_f64..1.6);
        let alpha = if rng.gen_bool(0.5) {
            magnitude
        } else {
            -magnitude
        };
        let beta = rng.gen_range(0.5_f64..3.5);
        let rate = move |k: f64| 2.0 * alpha * k;
        let sin_value = move |k: f64| (alpha * k * k).sin() * (beta * k).sin() / k;
        let cos_value = move |k: f64| (alpha * k * k).cos() * (beta * k).sin() / k;
        let cfg = PvQuadratureConfig {
            k_max: Some(60.0),
            ..Default::default()
        };
        let run = |value: &dyn Fn(f64) -> f64, which: SineKernel| {
            deviation(
                pv_integrate(
                    &PvIntegrand {
                        value,
                        pole: None,
                        numerator: None,
                        tail_rate: Some(&rate),
                    },
                    &cfg,
                ),
                fourier_sine_refs(alpha, beta, which),
            )
        };
        [
            run(&sin_value, SineKernel::Sin),
            run(&cos_value, SineKernel::Cos),
        ]
    }));
    out.push(CheckResult::new(
        s,
        "quadratic-phase-sine-pair",
        worst,
        Relation::AtMost,
        1e-6,
    ));

    out
}

fn closed_vs_pv_suite() -> Vec<CheckResult> {
    let s = Suite::ClosedVsPv;
    let src = on_source(1.0, 1.0);
    let cfg = PvQuadratureConfig::default();
    let mut out = Vec::new();

    let rel = DispersionRelation::nondispersive(1.0).expect("positive speed");
    let xs: Vec<f64> = (0..200).map(|i| 50.0 * f64::from(i) / 199.0).collect();
    let deviations: Vec<f64> = xs
        .par_iter()
        .map(|&x| {
            deviation(
                u_integral(&src, &rel, x, 25.0, &cfg),
                u_nondispersive(&src, 1.0, x, 25.0),
            )
        })
        .collect();
    out.push(CheckResult::new(
        s,
        "nondispersive-snapshot",
        fold_max(deviations),
        Relation::AtMost,
        2e-4,
    ));

    let rel = DispersionRelation::quadratic(1.0).expect("positive dispersion coefficient");
    let xs: Vec<f64> = (0..200).map(|i| 40.0 * f64::from(i) / 199.0).collect();
    let deviations: Vec<f64> = xs
        .par_iter()
        .map(|&x| {
            deviation(
                u_integral(&src, &rel, x, 15.0, &cfg),
                u_quadratic(&src, 1.0, x, 15.0),
            )
        })
        .collect();
    out.push(CheckResult::new(
        s,
        "quadratic-snapshot",
        fold_max(deviations),
        Relation::AtMost,
        2e-4,
    ));

    out
}

fn oracle_beam_suite() -> Vec<CheckResult> {
    let s = Suite::OracleBeam;
    let src = on_source(1.0, 1.0);
    let mut out = Vec::new();

    // Sup-norm error of an oracle run against the closed form at the
    // final stored time over x ≤ 40, skipping the two driven-end cells
    // whose values the ghost-moment closure constrains directly. The
    // domain is long enough (380) that the mesh-scale transients
    // launched by the switch-on kink — group speed ~2D/dx — cannot
    // bounce off the pinned far end and re-enter the window within the
    // duration on either mesh; otherwise their re-entry would pollute
    // the fine run more than the coarse one and mask the convergence.
    let sup_error = |dx: f64| -> Option<f64> {
        let cfg = OracleConfig {
            pde: Pde::Beam { d: 1.0 },
            far_boundary: FarBoundary::ClampedZero,
            dx,
            dt: 1e-3,
            domain_length: 380.0,
            duration: 15.0,
        };
        let grid = solve(&cfg, &src).ok()?;
        let it = grid.t_values().len() - 1;
        let t = grid.t_values()[it];
        let mut worst = 0.0_f64;
        for (ix, &x) in grid.x_values().iter().enumerate() {
            if ix < 2 {
                continue;
            }
            if x > 40.0 {
                break;
            }
            worst = worst.max((grid.value(ix, it) - u_quadratic(&src, 1.0, x, t)).abs());
        }
        Some(worst)
    };

    let coarse = sup_error(0.1);
    let fine = sup_error(0.05);

    out.push(CheckResult::new(
        s,
        "closed-form-agreement",
        fine.unwrap_or(f64::INFINITY),
        Relation::AtMost,
        0.02,
    ));

    // Second-order scheme: halving dx should cut the error by ~4; a
    // ratio of at least 3 leaves room for the time-step contribution.
    let ratio = match (coarse, fine) {
        (Some(coarse), Some(fine)) if fine > 0.0 => coarse / fine,
        _ => f64::NEG_INFINITY,
    };
    out.push(CheckResult::new(
        s,
        "mesh-halving-error-ratio",
        ratio,
        Relation::AtLeast,
        3.0,
    ));

    out
}

fn wavefront_suite() -> Vec<CheckResult> {
    let s = Suite::Wavefront;
    let mut out = Vec::new();

    // The envelope is exactly half the steady amplitude on the moving
    // front x = v_g·t, for any medium parameters.
    let mut rng = StdRng::seed_from_u64(0x0501);
    let worst = fold_max((0..100).map(|_| {
        let d = rng.gen_range(0.3_f64..3.0);
        let omega = rng.gen_range(0.3_f64..3.0);
        let t = rng.gen_range(0.05_f64..1000.0);
        let src = on_source(1.0, omega);
        let k = (omega / d).sqrt();
        let x = 2.0 * d * k * t;
        (envelope_on(&src, d, x, t) - 0.5).abs()
    }));
    out.push(CheckResult::new(
        s,
        "front-midpoint-half-amplitude",
        worst,
        Relation::AtMost,
        1e-12,
    ));

    // Peaks of the on-front oscillation |u(v_g t, t)| against the
    // slowly-decaying amplitude law, located by golden-section
    // refinement of sampled maxima over t ∈ [10, 40] periods-scale.
    let src = on_source(1.0, 1.0);
    let trace = |t: f64| front_oscillation(&src, 1.0, t).abs();
    let step = src.period() / 200.0;
    let t_lo = 10.0 - 2.0 * step;
    let count = ((40.0 + 2.0 * step - t_lo) / step).ceil() as usize + 1;
    let ts: Vec<f64> = (0..count).map(|i| t_lo + step * i as f64).collect();
    let vs: Vec<f64> = ts.iter().map(|&t| trace(t)).collect();
    let mut worst = 0.0_f64;
    for i in 1..count - 1 {
        if vs[i] >= vs[i - 1] && vs[i] >= vs[i + 1] && vs[i] > 0.2 {
            let t_peak = golden_argmax(&trace, ts[i - 1], ts[i + 1]);
            if !(10.0..=40.0).contains(&t_peak) {
                continue;
            }
            let reference = front_amplitude_asymptotic(&src, t_peak);
            worst = worst.max((trace(t_peak) - reference).abs() / reference);
        }
    }
    out.push(CheckResult::new(
        s,
        "front-amplitude-vs-asymptotic",
        worst,
        Relation::AtMost,
        0.01,
    ));

    out
}

fn boundary_thickness_suite() -> Vec<CheckResult> {
    let s = Suite::BoundaryThickness;
    let src = on_source(1.0, 1.0);
    let d = 1.0;
    let k = (src.omega() / d).sqrt();
    let mut out = Vec::new();

    // Centered finite difference of the envelope at the front against
    // the slope formula, relative, at three well-separated times.
    let worst = fold_max([10.0, 50.0, 200.0].into_iter().map(|t| {
        let x_front = 2.0 * d * k * t;
        let h = 1e-5 * (d * t).sqrt();
        let fd = (envelope_on(&src, d, x_front + h, t) - envelope_on(&src, d, x_front - h, t))
            / (2.0 * h);
        let target = envelope_front_slope(&src, d, t);
        ((fd - target) / target).abs()
    }));
    out.push(CheckResult::new(
        s,
        "front-slope-vs-finite-difference",
        worst,
        Relation::AtMost,
        1e-6,
    ));

    // Envelope profiles at different times collapse onto one curve in
    // the front-relative variable (x − v_g·t)/√t.
    let mut rng = StdRng::seed_from_u64(0x0601);
    let times = [50.0, 100.0, 200.0];
    let worst = fold_max((0..100).map(|_| {
        let xi = rng.gen_range(-5.0_f64..5.0);
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &t in &times {
            let spread = (2.0 * PI * d * t).sqrt();
            let x = 2.0 * d * k * t - xi * spread;
            let value = envelope_on(&src, d, x, t);
            lo = lo.min(value);
            hi = hi.max(value);
        }
        hi - lo
    }));
    out.push(CheckResult::new(
        s,
        "profile-collapse",
        worst,
        Relation::AtMost,
        1e-12,
    ));

    out
}

fn approx_specializations_suite() -> Vec<CheckResult> {
    let s = Suite::ApproxSpecializations;
    let mut out = Vec::new();

    // With zero curvature the general approximation must reproduce the
    // sharp-front solution exactly (bound 1e-12·A with A = 2).
    let src = on_source(2.0, 1.7);
    let c = 1.3;
    let rel = DispersionRelation::nondispersive(c).expect("positive speed");
    let mut rng = StdRng::seed_from_u64(0x0701);
    let worst = fold_max((0..500).map(|_| {
        let x = rng.gen_range(0.0_f64..80.0);
        let t = rng.gen_range(1e-3_f64..40.0);
        deviation(u_approx(&src, &rel, x, t), u_nondispersive(&src, c, x, t))
    }));
    out.push(CheckResult::new(
        s,
        "zero-curvature-matches-sharp-front",
        worst,
        Relation::AtMost,
        2e-12,
    ));

    // In the quadratic medium the exact solution exceeds the
    // approximation by exactly the drift term A·[C − S](x/√(2πDt)).
    let src = on_source(1.0, 1.0);
    let d = 1.0;
    let rel = DispersionRelation::quadratic(d).expect("positive dispersion coefficient");
    let mut rng = StdRng::seed_from_u64(0x0702);
    let worst = fold_max((0..500).map(|_| {
        let x = rng.gen_range(0.0_f64..60.0);
        let t = rng.gen_range(0.1_f64..30.0);
        let exact = u_quadratic(&src, d, x, t);
        let drift = fresnel(x / (2.0 * PI * d * t).sqrt()).expect("finite argument");
        let expected = src.amplitude() * (drift.c_value - drift.s_value);
        deviation(
            u_approx(&src, &rel, x, t).map(|approx| exact - approx),
            expected,
        )
    }));
    out.push(CheckResult::new(
        s,
        "quadratic-gap-is-drift-term",
        worst,
        Relation::AtMost,
        1e-12,
    ));

    out
}

fn klein_gordon_suite() -> Vec<CheckResult> {
    let s = Suite::KleinGordon;
    let src = on_source(1.0, 5.0);
    let rel = DispersionRelation::klein_gordon(1.0, 1.0).expect("positive parameters");
    let cfg = OracleConfig {
        pde: Pde::KleinGordon {
            c: 1.0,
            omega0: 1.0,
        },
        far_boundary: FarBoundary::ClampedZero,
        dx: 0.01,
        dt: 0.008,
        domain_length: 16.0,
        duration: 5.0,
    };

    let mut agreement = f64::INFINITY;
    let mut quiet = f64::INFINITY;
    let mut loud = f64::NEG_INFINITY;
    if let Ok(grid) = solve(&cfg, &src) {
        let it = grid.t_values().len() - 1;
        let t = grid.t_values()[it];
        agreement = 0.0;
        quiet = 0.0;
        for (ix, &x) in grid.x_values().iter().enumerate() {
            let oracle = grid.value(ix, it);
            if x <= 4.0 {
                agreement = agreement.max(deviation(u_approx(&src, &rel, x, t), oracle));
            } else if (6.0..=10.0).contains(&x) {
                quiet = quiet.max(oracle.abs());
                loud = loud.max(u_approx(&src, &rel, x, t).map_or(f64::NEG_INFINITY, f64::abs));
            }
        }
    }

    vec![
        CheckResult::new(s, "near-field-agreement", agreement, Relation::AtMost, 0.1),
        CheckResult::new(
            s,
            "oracle-quiet-beyond-characteristic",
            quiet,
            Relation::AtMost,
            0.05,
        ),
        CheckResult::new(
            s,
            "approximation-loud-beyond-characteristic",
            loud,
            Relation::AtLeast,
            0.05,
        ),
    ]
}

fn on_off_burst_suite() -> Vec<CheckResult> {
    let s = Suite::OnOffBurst;
    let mut out = Vec::new();

    // Switch-on plus switch-off reconstructs the steady carrier in both
    // media with a closed form.
    let src = on_source(1.0, 1.0);
    let d = 1.0;
    let c = 1.0;
    let k_quadratic = (src.omega() / d).sqrt();
    let k_nondispersive = src.omega() / c;
    let mut rng = StdRng::seed_from_u64(0x0901);
    let worst = fold_max((0..500).flat_map(|_| {
        let x = rng.gen_range(0.0_f64..60.0);
        let t = rng.gen_range(1e-3_f64..50.0);
        let steady_q = src.amplitude() * (src.omega() * t - k_quadratic * x).sin();
        let steady_n = src.amplitude() * (src.omega() * t - k_nondispersive * x).sin();
        [
            (u_quadratic(&src, d, x, t) + u_quadratic_off(&src, d, x, t) - steady_q).abs(),
            (u_nondispersive(&src, c, x, t) + u_nondispersive_off(&src, c, x, t) - steady_n).abs(),
        ]
    }));
    out.push(CheckResult::new(
        s,
        "complement-identity",
        worst,
        Relation::AtMost,
        1e-12,
    ));

    // A three-cycle burst's boundary trace: the source sine while the
    // burst lasts, exactly zero afterwards.
    let burst = SourceSignal::new(1.0, 1.0, SwitchingPattern::Burst(3))
        .expect("suite source parameters are valid");
    let rel = DispersionRelation::quadratic(d).expect("positive dispersion coefficient");
    let lag = 3.0 * burst.period();
    let worst = fold_max((0..1000).map(|i| {
        let t = -2.0 + 42.0 * f64::from(i) / 999.0;
        let expected = if t >= 0.0 && t < lag {
            burst.amplitude() * (burst.omega() * t).sin()
        } else {
            0.0
        };
        deviation(
            u_burst(&burst, &rel, 0.0, t, &BurstEvaluator::ExactQuadratic),
            expected,
        )
    }));
    out.push(CheckResult::new(
        s,
        "burst-boundary-trace",
        worst,
        Relation::AtMost,
        1e-12,
    ));

    // Long after switch-off the residue at small x/√(2πDt) is
    // ≈ A·x/√(2πDt): about 0.004·A, 0.020·A, 0.040·A at x = 1, 5, 10
    // for t = 1e4.
    let worst = fold_max(
        [1.0, 5.0, 10.0]
            .into_iter()
            .map(|x| u_quadratic_off(&src, d, x, 1e4).abs()),
    );
    out.push(CheckResult::new(
        s,
        "switch-off-far-decay",
        worst,
        Relation::AtMost,
        0.02,
    ));

    out
}
