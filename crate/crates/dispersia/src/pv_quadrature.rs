//! Numerical evaluation of the superposition-integral solution for an
//! arbitrary dispersion relation, via Cauchy principal-value quadrature.
//!
//! The integral has three numerically distinct features, each with its
//! own treatment:
//!
//! * **A simple pole at the carrier wavenumber K.** A window
//!   [K−ε, K+ε] is excised and handled by singularity subtraction:
//!   with the integrand written g(k)/(k−K), the symmetric window
//!   integral of g(K)/(k−K) vanishes exactly, and (g(k)−g(K))/(k−K)
//!   is smooth, so Gauss panels integrate it accurately. This carries
//!   an O(ε²)-and-better bias instead of the O(ε) bias of raw
//!   symmetric excision.
//! * **Oscillation over the finite range.** Adaptive bisection with a
//!   10-point/20-point Gauss–Legendre pair and a global error budget.
//! * **An oscillatory semi-infinite tail.** The tail is cut into
//!   half-period cells of the dominant phase; the alternating cell
//!   sums are brought to their limit by iterated averaging (an Euler
//!   transformation). When the phase is too slow to oscillate within
//!   the budgeted range, the tail falls back to geometrically growing
//!   panels with a ratio-extrapolated remainder. Truncation at `k_max`
//!   (no extrapolation) is available as an explicit mode.
//!
//! The same engine evaluates the field integral for any relation and
//! the closed-form reference integrals used to validate it. For a
//! general relation, whether the tail converges at all depends on how
//! ω grows; the engine reports non-convergence rather than guessing.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

use thiserror::Error;

use crate::dispersion::{DispersionError, DispersionRelation, SourceSignal};
use crate::special_functions::{fresnel, gauss_legendre, signum};

const MIN_TAIL_CELLS: usize = 24;
const MAX_TAIL_CELLS: usize = 400;
const MAX_DOUBLINGS: usize = 48;
const MAX_PANEL_DEPTH: u32 = 32;

/// Errors from principal-value quadrature.
#[derive(Debug, Error)]
pub enum PvQuadratureError {
    /// A configuration field violated its constraint.
    #[error("invalid quadrature configuration: {0}")]
    InvalidConfiguration(String),
    /// The integrand evaluated to a non-finite value away from the
    /// declared pole (e.g. the medium's ω vanishes at an interior node).
    #[error("integrand is singular at k = {at} (value {value})")]
    SingularIntegrand { at: f64, value: f64 },
    /// A panel refinement or tail summation failed to settle.
    #[error("quadrature failed to converge: {0}")]
    NonConvergent(String),
    /// Propagated wavenumber-inversion failure.
    #[error(transparent)]
    Dispersion(#[from] DispersionError),
}

/// How the integral beyond `k_max` is treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailMode {
    /// Stop at `k_max`; the remainder is the caller's accepted error.
    Truncate,
    /// Estimate the full remainder by half-period cell sums and
    /// iterated averaging (or ratio extrapolation for slow phases).
    AverageExtrapolate,
}

/// Quadrature parameters. `None` fields resolve to defaults that
/// depend on the pole position K (and the field position x for the
/// field integral): ε = K/100 and k_max = max(8K, 40/x).
#[derive(Debug, Clone)]
pub struct PvQuadratureConfig {
    /// Half-width of the excised pole window; 0 < ε < K/2.
    pub epsilon: Option<f64>,
    /// Truncation wavenumber; k_max > 4K.
    pub k_max: Option<f64>,
    /// Global absolute error budget per integral piece, in (0, 1e-3].
    pub panel_tol: f64,
    /// Tail treatment beyond k_max.
    pub tail_mode: TailMode,
}

impl Default for PvQuadratureConfig {
    fn default() -> Self {
        Self {
            epsilon: None,
            k_max: None,
            panel_tol: 1e-8,
            tail_mode: TailMode::AverageExtrapolate,
        }
    }
}

impl PvQuadratureConfig {
    fn validated_tol(&self) -> Result<f64, PvQuadratureError> {
        if self.panel_tol > 0.0 && self.panel_tol <= 1e-3 {
            Ok(self.panel_tol)
        } else {
            Err(PvQuadratureError::InvalidConfiguration(format!(
                "panel_tol must lie in (0, 1e-3], got {}",
                self.panel_tol
            )))
        }
    }

    fn resolve_epsilon(&self, k_pole: f64) -> Result<f64, PvQuadratureError> {
        let eps = self.epsilon.unwrap_or(k_pole / 100.0);
        if eps > 0.0 && eps < 0.5 * k_pole {
            Ok(eps)
        } else {
            Err(PvQuadratureError::InvalidConfiguration(format!(
                "epsilon must lie in (0, K/2) with K = {k_pole}, got {eps}"
            )))
        }
    }

    fn resolve_k_max(&self, k_pole: f64, x: Option<f64>) -> Result<f64, PvQuadratureError> {
        let default = match x {
            Some(x) if x > 0.0 => (8.0 * k_pole).max(40.0 / x),
            _ => 8.0 * k_pole,
        };
        let k_max = self.k_max.unwrap_or(default);
        if k_max > 4.0 * k_pole {
            Ok(k_max)
        } else {
            Err(PvQuadratureError::InvalidConfiguration(format!(
                "k_max must exceed 4K with K = {k_pole}, got {k_max}"
            )))
        }
    }
}

/// An integrand on (0, ∞) described well enough for principal-value
/// evaluation: its pointwise values, the pole location with the
/// numerator for singularity subtraction, and the dominant phase rate
/// for tail cell sizing.
pub struct PvIntegrand<'a> {
    /// Integrand value away from the pole. Never evaluated at interval
    /// endpoints, so removable endpoint singularities (0/0 at k = 0)
    /// are harmless.
    pub value: &'a dyn Fn(f64) -> f64,
    /// Simple-pole position K > 0, if any.
    pub pole: Option<f64>,
    /// Numerator g with value(k) = g(k)/(k − K) near the pole; required
    /// when `pole` is set.
    pub numerator: Option<&'a dyn Fn(f64) -> f64>,
    /// d(phase)/dk of the dominant large-k oscillation; required for
    /// the average-extrapolate tail.
    pub tail_rate: Option<&'a dyn Fn(f64) -> f64>,
}

/// Integral of `integrand` over (0, ∞) in the principal-value sense.
///
/// Splits the axis into [0, K−ε], the subtracted pole window, and
/// [K+ε, k_max/2], then hands [k_max/2, ∞) to the tail scheme (with
/// truncation, the last stretch is [k_max/2, k_max] and nothing more).
pub fn pv_integrate(
    integrand: &PvIntegrand<'_>,
    cfg: &PvQuadratureConfig,
) -> Result<f64, PvQuadratureError> {
    let tol = cfg.validated_tol()?;
    let f = integrand.value;
    let (regular_end, head) = match integrand.pole {
        Some(k_pole) => {
            if !(k_pole.is_finite() && k_pole > 0.0) {
                return Err(PvQuadratureError::InvalidConfiguration(format!(
                    "pole position must be positive and finite, got {k_pole}"
                )));
            }
            let numerator = integrand.numerator.ok_or_else(|| {
                PvQuadratureError::InvalidConfiguration(
                    "a pole requires the numerator function for subtraction".into(),
                )
            })?;
            let eps = cfg.resolve_epsilon(k_pole)?;
            let k_max = cfg.resolve_k_max(k_pole, None)?;
            let below = adaptive(f, 0.0, k_pole - eps, tol)?;
            let window = pole_window(numerator, k_pole, eps, tol)?;
            let above = adaptive(f, k_pole + eps, 0.5 * k_max, tol)?;
            (k_max, below + window + above)
        }
        None => {
            let k_max = cfg.k_max.ok_or_else(|| {
                PvQuadratureError::InvalidConfiguration(
                    "k_max is required when the integrand declares no pole".into(),
                )
            })?;
            if !(k_max.is_finite() && k_max > 0.0) {
                return Err(PvQuadratureError::InvalidConfiguration(format!(
                    "k_max must be positive and finite, got {k_max}"
                )));
            }
            (k_max, adaptive(f, 0.0, 0.5 * k_max, tol)?)
        }
    };
    let tail_start = 0.5 * regular_end;
    let tail = match cfg.tail_mode {
        TailMode::Truncate => adaptive(f, tail_start, regular_end, tol)?,
        TailMode::AverageExtrapolate => {
            let rate = integrand.tail_rate.ok_or_else(|| {
                PvQuadratureError::InvalidConfiguration(
                    "the average-extrapolate tail requires a phase-rate hint".into(),
                )
            })?;
            oscillatory_tail(f, rate, tail_start, regular_end - tail_start, tol)?
        }
    };
    Ok(head + tail)
}

/// Which closed-form reference transform to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SineKernel {
    /// ∫₀^∞ sin(αk²)·sin(βk)/k dk.
    Sin,
    /// ∫₀^∞ cos(αk²)·sin(βk)/k dk.
    Cos,
}

/// Closed forms of the two quadratic-phase sine transforms that
/// underlie the exact solutions: (π/2)·sgn(α)·[C − S] of β/√(2π|α|)
/// for the sin kernel, and (π/2)·[C + S] for the cos kernel.
///
/// `alpha` must be nonzero (the transforms degenerate at α = 0).
pub fn fourier_sine_refs(alpha: f64, beta: f64, which: SineKernel) -> f64 {
    assert!(alpha != 0.0, "fourier_sine_refs requires alpha != 0");
    let pair =
        fresnel(beta / (2.0 * PI * alpha.abs()).sqrt()).expect("Fresnel argument must be finite");
    match which {
        SineKernel::Sin => FRAC_PI_2 * f64::from(signum(alpha)) * (pair.c_value - pair.s_value),
        SineKernel::Cos => FRAC_PI_2 * (pair.c_value + pair.s_value),
    }
}

/// The integrand of the field integral in product form,
/// k/((k²−K²)·ω(k)) · 2·sin(ω(k)t)·sin(kx): writing the cosine
/// difference as a product keeps the k → 0 cancellation explicit and
/// loss-free (the 1/(k·ω) growth is cancelled by sin(ωt)·sin(kx)).
pub(crate) fn assembled_integrand<'a>(
    rel: &'a DispersionRelation,
    k_pole: f64,
    x: f64,
    t: f64,
) -> impl Fn(f64) -> f64 + 'a {
    move |k: f64| {
        let w = rel.omega(k);
        k / ((k * k - k_pole * k_pole) * w) * 2.0 * (w * t).sin() * (k * x).sin()
    }
}

/// Switch-on field by direct quadrature of the superposition integral:
/// (A/2)[sin(Ωt−Kx) + sin(Ωt+Kx)] − (AΩ/π)·PV∫₀^∞ … dk, usable for
/// any relation with a real carrier wavenumber. Returns 0 for t < 0.
///
/// The integrand's large-k tail is handled as two cosine components
/// with phases ω(k)t ∓ kx and rates ω'(k)t ∓ x, each sized and summed
/// independently (they can oscillate at very different speeds — one of
/// them stalls entirely on the front x where ω'·t = x).
///
/// Errors: invalid configuration, no real carrier wavenumber, a
/// singular medium (ω = 0 at an evaluated node makes the integrand
/// non-finite), or a tail that fails to settle.
pub fn u_integral(
    src: &SourceSignal,
    rel: &DispersionRelation,
    x: f64,
    t: f64,
    cfg: &PvQuadratureConfig,
) -> Result<f64, PvQuadratureError> {
    let tol = cfg.validated_tol()?;
    let k_pole = rel.wavenumber_for(src.omega())?;
    let eps = cfg.resolve_epsilon(k_pole)?;
    let k_max = cfg.resolve_k_max(k_pole, Some(x))?;
    if t < 0.0 {
        return Ok(0.0);
    }

    let f = assembled_integrand(rel, k_pole, x, t);
    let numerator = move |k: f64| {
        let w = rel.omega(k);
        k / ((k + k_pole) * w) * 2.0 * (w * t).sin() * (k * x).sin()
    };

    let below = adaptive(&f, 0.0, k_pole - eps, tol)?;
    let window = pole_window(&numerator, k_pole, eps, tol)?;
    let tail_start = 0.5 * k_max;
    let above = adaptive(&f, k_pole + eps, tail_start, tol)?;
    let tail = match cfg.tail_mode {
        TailMode::Truncate => adaptive(&f, tail_start, k_max, tol)?,
        TailMode::AverageExtrapolate => {
            let amplitude = |k: f64| {
                let w = rel.omega(k);
                k / ((k * k - k_pole * k_pole) * w)
            };
            let span = k_max - tail_start;
            let minus = oscillatory_tail(
                &|k: f64| amplitude(k) * (rel.omega(k) * t - k * x).cos(),
                &|k: f64| rel.group_velocity(k) * t - x,
                tail_start,
                span,
                tol,
            )?;
            let plus = oscillatory_tail(
                &|k: f64| -amplitude(k) * (rel.omega(k) * t + k * x).cos(),
                &|k: f64| rel.group_velocity(k) * t + x,
                tail_start,
                span,
                tol,
            )?;
            minus + plus
        }
    };

    let pv = below + window + above + tail;
    let a = src.amplitude();
    let omega = src.omega();
    Ok(
        0.5 * a * ((omega * t - k_pole * x).sin() + (omega * t + k_pole * x).sin())
            - a * omega / PI * pv,
    )
}

fn gl10() -> &'static (Vec<f64>, Vec<f64>) {
    static CELL: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    CELL.get_or_init(|| gauss_legendre(10))
}

fn gl20() -> &'static (Vec<f64>, Vec<f64>) {
    static CELL: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    CELL.get_or_init(|| gauss_legendre(20))
}

fn gl_sum(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    rule: &(Vec<f64>, Vec<f64>),
) -> Result<f64, PvQuadratureError> {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for (node, weight) in rule.0.iter().zip(&rule.1) {
        let k = mid + half * node;
        let v = f(k);
        if !v.is_finite() {
            return Err(PvQuadratureError::SingularIntegrand { at: k, value: v });
        }
        acc += weight * v;
    }
    Ok(acc * half)
}

/// Adaptive bisection with a GL10/GL20 pair and a global absolute
/// error budget distributed proportionally to panel width.
fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64, PvQuadratureError> {
    // Empty, inverted, or non-finite intervals contribute nothing.
    if !(a.is_finite() && b.is_finite() && b > a) {
        return Ok(0.0);
    }
    let density = tol / (b - a);
    adaptive_rec(f, a, b, density, 0)
}

fn adaptive_rec(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol_density: f64,
    depth: u32,
) -> Result<f64, PvQuadratureError> {
    let coarse = gl_sum(f, a, b, gl10())?;
    let fine = gl_sum(f, a, b, gl20())?;
    let err = (fine - coarse).abs();
    if err <= tol_density * (b - a) + 1e-15 * fine.abs()
        || (b - a) <= 1e-13 * (a.abs() + b.abs() + 1.0)
    {
        return Ok(fine);
    }
    if depth >= MAX_PANEL_DEPTH {
        return Err(PvQuadratureError::NonConvergent(format!(
            "panel refinement exhausted on [{a}, {b}] (pair disagreement {err:e})"
        )));
    }
    let mid = 0.5 * (a + b);
    Ok(adaptive_rec(f, a, mid, tol_density, depth + 1)?
        + adaptive_rec(f, mid, b, tol_density, depth + 1)?)
}

/// Principal value of ∫ g(k)/(k−K) dk over the symmetric window
/// [K−ε, K+ε]: the g(K)/(k−K) part integrates to exactly zero by
/// symmetry, leaving the smooth subtracted integrand.
fn pole_window(
    g: &dyn Fn(f64) -> f64,
    k_pole: f64,
    eps: f64,
    tol: f64,
) -> Result<f64, PvQuadratureError> {
    let g_at_pole = g(k_pole);
    if !g_at_pole.is_finite() {
        return Err(PvQuadratureError::SingularIntegrand {
            at: k_pole,
            value: g_at_pole,
        });
    }
    let subtracted = move |k: f64| (g(k) - g_at_pole) / (k - k_pole);
    adaptive(&subtracted, k_pole - eps, k_pole + eps, tol)
}

/// Integral of an oscillatory component over [start, ∞): half-period
/// cells of its phase summed by iterated averaging; a phase too slow
/// to complete a half period within the budgeted span is handed to the
/// geometric-panel fallback instead.
fn oscillatory_tail(
    component: &dyn Fn(f64) -> f64,
    rate: &dyn Fn(f64) -> f64,
    start: f64,
    span: f64,
    tol: f64,
) -> Result<f64, PvQuadratureError> {
    let rate_floor = PI / span;
    if rate(start).abs() <= rate_floor {
        return dc_tail(component, start, tol);
    }
    let mut cells = Vec::with_capacity(MIN_TAIL_CELLS);
    let mut k = start;
    let end = start + span;
    while cells.len() < MAX_TAIL_CELLS && (k < end || cells.len() < MIN_TAIL_CELLS) {
        let width = PI / rate(k).abs().max(rate_floor);
        let next = k + width;
        cells.push(gl_sum(component, k, next, gl20())?);
        k = next;
    }
    euler_limit(&cells, tol)
}

/// Limit of the series of cell sums by iterated pairwise averaging of
/// its partial sums (Euler transformation): each averaging pass damps
/// the alternating remainder; the run is accepted once consecutive
/// passes agree within a small fraction of the error budget.
fn euler_limit(cells: &[f64], tol: f64) -> Result<f64, PvQuadratureError> {
    let mut stage: Vec<f64> = cells
        .iter()
        .scan(0.0, |acc, c| {
            *acc += c;
            Some(*acc)
        })
        .collect();
    let mut previous = *stage.last().expect("at least one tail cell");
    let mut passes = 0usize;
    while stage.len() > 1 {
        for i in 0..stage.len() - 1 {
            stage[i] = 0.5 * (stage[i] + stage[i + 1]);
        }
        stage.pop();
        passes += 1;
        let current = *stage.last().expect("stage never empties");
        if passes >= 4 && (current - previous).abs() <= 0.02 * tol + 1e-15 * current.abs() {
            return Ok(current);
        }
        previous = current;
    }
    Err(PvQuadratureError::NonConvergent(format!(
        "tail cell averaging failed to settle after {passes} passes (last value {previous:e})"
    )))
}

/// Tail of a non-oscillating (or negligibly slowly oscillating)
/// decaying integrand: geometrically doubling panels, stopped when a
/// panel's contribution is negligible, with the remainder estimated by
/// geometric continuation of the panel-sum ratio.
fn dc_tail(component: &dyn Fn(f64) -> f64, start: f64, tol: f64) -> Result<f64, PvQuadratureError> {
    let mut total = 0.0;
    let mut a = start.max(1e-12);
    let mut previous: Option<f64> = None;
    let mut ratio = 0.0;
    for _ in 0..MAX_DOUBLINGS {
        let b = 2.0 * a;
        let s = adaptive(component, a, b, 0.1 * tol)?;
        total += s;
        if let Some(p) = previous {
            if p != 0.0 {
                ratio = s / p;
            }
        }
        if s.abs() <= 0.02 * tol {
            if ratio.abs() < 0.95 {
                total += s * ratio / (1.0 - ratio);
            }
            return Ok(total);
        }
        previous = Some(s);
        a = b;
    }
    Err(PvQuadratureError::NonConvergent(format!(
        "geometric tail panels failed to decay below {:e} within {MAX_DOUBLINGS} doublings",
        0.02 * tol
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form;
    use crate::dispersion::SwitchingPattern;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn on_source(a: f64, omega: f64) -> SourceSignal {
        SourceSignal::new(a, omega, SwitchingPattern::OffToOn).unwrap()
    }

    fn dirichlet(x: f64, cfg: &PvQuadratureConfig) -> Result<f64, PvQuadratureError> {
        let value = move |k: f64| (k * x).sin() / k;
        let rate = move |_: f64| x;
        pv_integrate(
            &PvIntegrand {
                value: &value,
                pole: None,
                numerator: None,
                tail_rate: Some(&rate),
            },
            cfg,
        )
    }

    fn cosine_pole(alpha: f64, k_pole: f64, cfg: &PvQuadratureConfig) -> f64 {
        let value = move |k: f64| (alpha * k).cos() / (k * k - k_pole * k_pole);
        let numerator = move |k: f64| (alpha * k).cos() / (k + k_pole);
        let rate = move |_: f64| alpha;
        pv_integrate(
            &PvIntegrand {
                value: &value,
                pole: Some(k_pole),
                numerator: Some(&numerator),
                tail_rate: Some(&rate),
            },
            cfg,
        )
        .unwrap()
    }

    fn sine_pole(x: f64, k_pole: f64, cfg: &PvQuadratureConfig) -> f64 {
        let value = move |k: f64| k * (k * x).sin() / (k * k - k_pole * k_pole);
        let numerator = move |k: f64| k * (k * x).sin() / (k + k_pole);
        let rate = move |_: f64| x;
        pv_integrate(
            &PvIntegrand {
                value: &value,
                pole: Some(k_pole),
                numerator: Some(&numerator),
                tail_rate: Some(&rate),
            },
            cfg,
        )
        .unwrap()
    }

    #[test]
    fn dirichlet_integral() {
        let cfg = PvQuadratureConfig {
            k_max: Some(40.0),
            ..PvQuadratureConfig::default()
        };
        for x in [0.3, 1.0, 4.7] {
            let value = dirichlet(x, &cfg).unwrap();
            assert!(
                (value - FRAC_PI_2).abs() < 1e-6,
                "Dirichlet value off at x = {x}: {value}"
            );
        }
    }

    #[test]
    fn cosine_integral_with_pole() {
        let cfg = PvQuadratureConfig::default();
        for (alpha, k_pole) in [(2.5_f64, 1.3_f64), (-2.5, 1.3), (0.4, 3.0)] {
            let expect = -PI * (alpha * k_pole).sin() / (2.0 * k_pole) * alpha.signum();
            let value = cosine_pole(alpha, k_pole, &cfg);
            assert!(
                (value - expect).abs() < 1e-6,
                "cosine PV integral off at α = {alpha}, K = {k_pole}: {value} vs {expect}"
            );
        }
    }

    #[test]
    fn sine_integral_with_pole() {
        let cfg = PvQuadratureConfig::default();
        for (x, k_pole) in [(0.7_f64, 2.0_f64), (2.0, 0.9), (5.0, 1.0)] {
            let expect = FRAC_PI_2 * (k_pole * x).cos();
            let value = sine_pole(x, k_pole, &cfg);
            assert!(
                (value - expect).abs() < 1e-6,
                "sine PV integral off at x = {x}, K = {k_pole}: {value} vs {expect}"
            );
        }
    }

    #[test]
    fn quadratic_phase_transforms_match_quadrature() {
        let cfg = PvQuadratureConfig {
            k_max: Some(60.0),
            ..PvQuadratureConfig::default()
        };
        for (alpha, beta) in [(1.0, 1.0), (0.5, 2.0), (-1.3, 0.8)] {
            let sin_value = {
                let value = move |k: f64| (alpha * k * k).sin() * (beta * k).sin() / k;
                let rate = move |k: f64| 2.0 * alpha * k;
                pv_integrate(
                    &PvIntegrand {
                        value: &value,
                        pole: None,
                        numerator: None,
                        tail_rate: Some(&rate),
                    },
                    &cfg,
                )
                .unwrap()
            };
            let cos_value = {
                let value = move |k: f64| (alpha * k * k).cos() * (beta * k).sin() / k;
                let rate = move |k: f64| 2.0 * alpha * k;
                pv_integrate(
                    &PvIntegrand {
                        value: &value,
                        pole: None,
                        numerator: None,
                        tail_rate: Some(&rate),
                    },
                    &cfg,
                )
                .unwrap()
            };
            let sin_ref = fourier_sine_refs(alpha, beta, SineKernel::Sin);
            let cos_ref = fourier_sine_refs(alpha, beta, SineKernel::Cos);
            assert!(
                (sin_value - sin_ref).abs() < 1e-6,
                "sin-kernel transform off at ({alpha}, {beta}): {sin_value} vs {sin_ref}"
            );
            assert!(
                (cos_value - cos_ref).abs() < 1e-6,
                "cos-kernel transform off at ({alpha}, {beta}): {cos_value} vs {cos_ref}"
            );
        }
    }

    #[test]
    fn transform_special_values() {
        assert_eq!(fourier_sine_refs(1.7, 0.0, SineKernel::Sin), 0.0);
        assert_eq!(fourier_sine_refs(1.7, 0.0, SineKernel::Cos), 0.0);
        // C + S → 1 as the argument grows, so the cos kernel tends to π/2
        let big = fourier_sine_refs(1.0, 1e4, SineKernel::Cos);
        assert!((big - FRAC_PI_2).abs() < 1e-3);
    }

    #[test]
    fn epsilon_independence() {
        let narrow = PvQuadratureConfig {
            epsilon: Some(1.3 / 200.0),
            ..PvQuadratureConfig::default()
        };
        let wide = PvQuadratureConfig {
            epsilon: Some(1.3 / 100.0),
            ..PvQuadratureConfig::default()
        };
        let with_wide = cosine_pole(2.5, 1.3, &wide);
        let with_narrow = cosine_pole(2.5, 1.3, &narrow);
        assert!(
            (with_wide - with_narrow).abs() < 1e-8 * 10.0,
            "pole-window width leaked into the result: {with_wide} vs {with_narrow}"
        );
    }

    #[test]
    fn field_matches_closed_forms_on_spot_checks() {
        let cfg = PvQuadratureConfig::default();
        let src = on_source(1.0, 1.0);
        let quad = DispersionRelation::quadratic(1.0).unwrap();
        for x in [0.8, 3.0, 7.4, 20.0, 31.0] {
            let by_integral = u_integral(&src, &quad, x, 15.0, &cfg).unwrap();
            let closed = closed_form::u_quadratic(&src, 1.0, x, 15.0);
            assert!(
                (by_integral - closed).abs() < 2e-4,
                "quadratic field mismatch at x = {x}: {by_integral} vs {closed}"
            );
        }
        let nd = DispersionRelation::nondispersive(1.0).unwrap();
        for x in [0.5, 10.0, 24.75, 25.0, 26.0, 40.0] {
            let by_integral = u_integral(&src, &nd, x, 25.0, &cfg).unwrap();
            let closed = closed_form::u_nondispersive(&src, 1.0, x, 25.0);
            assert!(
                (by_integral - closed).abs() < 2e-4,
                "sharp-front field mismatch at x = {x}: {by_integral} vs {closed}"
            );
        }
    }

    #[test]
    fn boundary_time_trace_and_switch_instant() {
        let cfg = PvQuadratureConfig::default();
        let src = on_source(1.0, 1.0);
        let quad = DispersionRelation::quadratic(1.0).unwrap();
        for t in [0.7, 5.0, 19.3] {
            let u = u_integral(&src, &quad, 0.0, t, &cfg).unwrap();
            assert!((u - t.sin()).abs() < 1e-8, "boundary trace off at t = {t}");
        }
        assert_eq!(u_integral(&src, &quad, 3.0, -1.0, &cfg).unwrap(), 0.0);
        let at_switch = u_integral(&src, &quad, 3.0, 0.0, &cfg).unwrap();
        assert!(at_switch.abs() < 1e-9);
    }

    #[test]
    fn truncation_cutoff_convergence() {
        let src = on_source(1.0, 1.0);
        let quad = DispersionRelation::quadratic(1.0).unwrap();
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..20 {
            let x = rng.gen_range(0.5..20.0);
            let t = rng.gen_range(1.0..30.0);
            let base = PvQuadratureConfig::default();
            let k_max = base.resolve_k_max(1.0, Some(x)).unwrap();
            let doubled = PvQuadratureConfig {
                k_max: Some(2.0 * k_max),
                ..PvQuadratureConfig::default()
            };
            let u1 = u_integral(&src, &quad, x, t, &base).unwrap();
            let u2 = u_integral(&src, &quad, x, t, &doubled).unwrap();
            assert!(
                (u1 - u2).abs() <= 1e-5 * u1.abs().max(1e-3),
                "cutoff sensitivity at ({x}, {t}): {u1} vs {u2}"
            );
        }
    }

    #[test]
    fn linear_in_amplitude() {
        let cfg = PvQuadratureConfig::default();
        let quad = DispersionRelation::quadratic(1.0).unwrap();
        let single = u_integral(&on_source(1.0, 1.0), &quad, 4.2, 9.0, &cfg).unwrap();
        let triple = u_integral(&on_source(3.0, 1.0), &quad, 4.2, 9.0, &cfg).unwrap();
        assert_eq!(triple, 3.0 * single);
    }

    #[test]
    fn assembled_integrand_is_bounded_near_zero() {
        let media = [
            DispersionRelation::nondispersive(1.0).unwrap(),
            DispersionRelation::quadratic(1.0).unwrap(),
        ];
        for rel in &media {
            let k_pole = rel.wavenumber_for(1.0).unwrap();
            let f = assembled_integrand(rel, k_pole, 5.0, 12.0);
            let mut k = k_pole / 10.0;
            while k > 1e-12 {
                let v = f(k);
                assert!(
                    v.is_finite() && v.abs() < 1e3,
                    "integrand unbounded at k = {k:e}: {v:e}"
                );
                k *= 0.5;
            }
        }
    }

    #[test]
    fn configuration_validation() {
        let src = on_source(1.0, 1.0);
        let quad = DispersionRelation::quadratic(1.0).unwrap();
        let bad_eps = PvQuadratureConfig {
            epsilon: Some(0.6),
            ..PvQuadratureConfig::default()
        };
        assert!(matches!(
            u_integral(&src, &quad, 1.0, 1.0, &bad_eps),
            Err(PvQuadratureError::InvalidConfiguration(_))
        ));
        let bad_kmax = PvQuadratureConfig {
            k_max: Some(3.0),
            ..PvQuadratureConfig::default()
        };
        assert!(matches!(
            u_integral(&src, &quad, 1.0, 1.0, &bad_kmax),
            Err(PvQuadratureError::InvalidConfiguration(_))
        ));
        let bad_tol = PvQuadratureConfig {
            panel_tol: 0.1,
            ..PvQuadratureConfig::default()
        };
        assert!(matches!(
            u_integral(&src, &quad, 1.0, 1.0, &bad_tol),
            Err(PvQuadratureError::InvalidConfiguration(_))
        ));
        // extrapolating tail with no rate hint is rejected up front
        let value = |k: f64| 1.0 / (1.0 + k * k);
        assert!(matches!(
            pv_integrate(
                &PvIntegrand {
                    value: &value,
                    pole: None,
                    numerator: None,
                    tail_rate: None,
                },
                &PvQuadratureConfig {
                    k_max: Some(40.0),
                    ..PvQuadratureConfig::default()
                },
            ),
            Err(PvQuadratureError::InvalidConfiguration(_))
        ));
    }

    #[test]
    fn singular_integrand_is_reported() {
        let value = |k: f64| 1.0 / (k - k); // non-finite everywhere
        let rate = |_: f64| 1.0;
        let result = pv_integrate(
            &PvIntegrand {
                value: &value,
                pole: None,
                numerator: None,
                tail_rate: Some(&rate),
            },
            &PvQuadratureConfig {
                k_max: Some(10.0),
                ..PvQuadratureConfig::default()
            },
        );
        assert!(matches!(
            result,
            Err(PvQuadratureError::SingularIntegrand { .. })
        ));
    }

    #[test]
    fn below_cutoff_is_propagated() {
        let cfg = PvQuadratureConfig::default();
        let kg = DispersionRelation::klein_gordon(1.0, 1.0).unwrap();
        assert!(matches!(
            u_integral(&on_source(1.0, 0.5), &kg, 1.0, 1.0, &cfg),
            Err(PvQuadratureError::Dispersion(_))
        ));
    }
}
