//! Closed-form field solutions and front diagnostics for the two media
//! where the superposition integral collapses to elementary and Fresnel
//! terms: the nondispersive medium ω = ck and the quadratic medium
//! ω = Dk².
//!
//! For ω = ck the field is a sharply cut sine wave travelling at `c`.
//! For ω = Dk² it is a five-term combination of Fresnel functions: two
//! quadrature pairs riding the left- and right-going carriers plus a
//! carrier-free drift term. The ON→OFF solutions are the exact
//! complements (steady sine minus the ON solution), and n-cycle bursts
//! superpose a delayed switch-off on a switch-on.
//!
//! Front diagnostics quantify how the ON-OFF boundary travels and
//! spreads: the field sampled on the moving front x = v_g·t, the
//! asymptotic amplitude of that trace, approximate envelopes for both
//! switching directions, the local phase shift, and the envelope slope
//! at the front (which decays as t^{-1/2}, so the transition layer
//! thickens as t^{1/2}).

use std::f64::consts::{PI, SQRT_2};

use thiserror::Error;

use crate::approx_general;
use crate::dispersion::{DispersionError, DispersionRelation, SourceSignal, SwitchingPattern};
use crate::pv_quadrature::{self, PvQuadratureConfig, PvQuadratureError};
use crate::special_functions::{fresnel, signum, FresnelPair};

/// One field sample: position, time, displacement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub x: f64,
    pub t: f64,
    pub u: f64,
}

/// Errors from burst evaluation (the only fallible closed-form entry
/// point: it composes evaluators that may themselves fail).
#[derive(Debug, Error)]
pub enum ClosedFormError {
    /// The chosen burst evaluator does not apply to the given medium.
    #[error("burst evaluator requires a {expected} dispersion relation, got {found}")]
    EvaluatorMismatch {
        expected: &'static str,
        found: String,
    },
    /// Burst evaluation needs a burst source to know the cycle count.
    #[error("burst evaluation requires a burst source signal, got {found:?}")]
    NotABurstSource { found: SwitchingPattern },
    /// Propagated from the approximate evaluator (wavenumber inversion,
    /// parity check).
    #[error(transparent)]
    Dispersion(#[from] DispersionError),
    /// Propagated from the quadrature evaluator.
    #[error(transparent)]
    Quadrature(#[from] PvQuadratureError),
}

fn fresnel_pair(argument: f64) -> FresnelPair {
    fresnel(argument).expect("Fresnel argument must be finite")
}

/// Switch-on field in the nondispersive medium ω = ck: zero ahead of
/// x = ct, the steady sine `A sin(Ωt − Kx)` behind it, the midpoint
/// value exactly on the front.
///
/// Interprets `src` as switching OFF→ON at t = 0 (the field is 0 for
/// t < 0) regardless of `src.pattern()`. Requires `x ≥ 0`, `c > 0`.
pub fn u_nondispersive(src: &SourceSignal, c: f64, x: f64, t: f64) -> f64 {
    if t < 0.0 {
        return 0.0;
    }
    let k = src.omega() / c;
    0.5 * src.amplitude() * (1.0 + f64::from(signum(c * t - x))) * (src.omega() * t - k * x).sin()
}

/// Switch-off field in the nondispersive medium: the steady sine for
/// x ≥ ct (the switch-off has not arrived), zero behind. For t < 0 the
/// steady emission `A sin(Ωt − Kx)` fills the whole axis.
pub fn u_nondispersive_off(src: &SourceSignal, c: f64, x: f64, t: f64) -> f64 {
    let k = src.omega() / c;
    let steady = src.amplitude() * (src.omega() * t - k * x).sin();
    if t < 0.0 {
        return steady;
    }
    0.5 * (1.0 - f64::from(signum(c * t - x))) * steady
}

/// The five Fresnel brackets shared by the quadratic-medium solutions,
/// evaluated at (x, t) for t > 0.
struct QuadraticTerms {
    /// C, S at the front-relative argument (2DKt − x)/√(2πDt).
    minus: FresnelPair,
    /// C, S at (2DKt + x)/√(2πDt).
    plus: FresnelPair,
    /// C, S at the drift argument x/√(2πDt).
    zero: FresnelPair,
    sin_minus: f64,
    cos_minus: f64,
    sin_plus: f64,
    cos_plus: f64,
}

impl QuadraticTerms {
    fn evaluate(omega: f64, d: f64, x: f64, t: f64) -> Self {
        let k = (omega / d).sqrt();
        let spread = (2.0 * PI * d * t).sqrt();
        let front = 2.0 * d * k * t;
        let (sin_minus, cos_minus) = (omega * t - k * x).sin_cos();
        let (sin_plus, cos_plus) = (omega * t + k * x).sin_cos();
        Self {
            minus: fresnel_pair((front - x) / spread),
            plus: fresnel_pair((front + x) / spread),
            zero: fresnel_pair(x / spread),
            sin_minus,
            cos_minus,
            sin_plus,
            cos_plus,
        }
    }

    /// `sign = +1` for the switch-on field, `-1` for its complement.
    fn assemble(&self, a: f64, sign: f64) -> f64 {
        let half = 0.5 * a * sign;
        half * (sign + self.minus.c_value + self.minus.s_value) * self.sin_minus
            + half * (self.minus.c_value - self.minus.s_value) * self.cos_minus
            + half * (1.0 - self.plus.c_value - self.plus.s_value) * self.sin_plus
            - half * (self.plus.c_value - self.plus.s_value) * self.cos_plus
            + a * sign * (self.zero.c_value - self.zero.s_value)
    }
}

/// Switch-on field in the quadratic medium ω = Dk²: the exact five-term
/// Fresnel solution with K = √(Ω/D).
///
/// The field is 0 for t ≤ 0 (the Fresnel arguments are singular at
/// t = 0; the limit value is 0 for every x ≥ 0). Requires `x ≥ 0`,
/// `D > 0`.
pub fn u_quadratic(src: &SourceSignal, d: f64, x: f64, t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    QuadraticTerms::evaluate(src.omega(), d, x, t).assemble(src.amplitude(), 1.0)
}

/// Switch-off field in the quadratic medium: the exact complement of
/// [`u_quadratic`], i.e. `A sin(Ωt − Kx) − u_quadratic(x, t)`, written
/// out with flipped bracket signs so the large-t decay to the complete
/// OFF state is explicit. For t ≤ 0 the steady emission fills the axis.
pub fn u_quadratic_off(src: &SourceSignal, d: f64, x: f64, t: f64) -> f64 {
    if t <= 0.0 {
        let k = (src.omega() / d).sqrt();
        return src.amplitude() * (src.omega() * t - k * x).sin();
    }
    QuadraticTerms::evaluate(src.omega(), d, x, t).assemble(src.amplitude(), -1.0)
}

/// How an n-cycle burst is evaluated: a burst is the superposition of a
/// switch-on and a delayed switch-on of opposite sign, so any OFF→ON
/// evaluator serves as the kernel.
#[derive(Debug, Clone)]
pub enum BurstEvaluator {
    /// Sharp-front closed form; requires a nondispersive relation.
    ExactNondispersive,
    /// Five-term Fresnel closed form; requires a quadratic relation.
    ExactQuadratic,
    /// Fresnel approximation for any even relation.
    Approximate,
    /// Direct quadrature of the superposition integral.
    PvQuadrature(PvQuadratureConfig),
}

/// Burst field `u_n(x, t) = u_∞(x, t) − u_∞(x, t − nT)`, where `u_∞`
/// is the OFF→ON solution produced by `evaluator` (taken as 0 for
/// negative time arguments) and T is the source period.
///
/// The source must carry a [`SwitchingPattern::Burst`] pattern (it
/// supplies the cycle count n), and the evaluator must match the
/// relation: the exact kernels only exist for their own media.
pub fn u_burst(
    src: &SourceSignal,
    rel: &DispersionRelation,
    x: f64,
    t: f64,
    evaluator: &BurstEvaluator,
) -> Result<f64, ClosedFormError> {
    let SwitchingPattern::Burst(n) = src.pattern() else {
        return Err(ClosedFormError::NotABurstSource {
            found: src.pattern(),
        });
    };
    let lag = f64::from(n) * src.period();
    Ok(switch_on_kernel(src, rel, x, t, evaluator)?
        - switch_on_kernel(src, rel, x, t - lag, evaluator)?)
}

fn switch_on_kernel(
    src: &SourceSignal,
    rel: &DispersionRelation,
    x: f64,
    t: f64,
    evaluator: &BurstEvaluator,
) -> Result<f64, ClosedFormError> {
    if t < 0.0 {
        return Ok(0.0);
    }
    match evaluator {
        BurstEvaluator::ExactNondispersive => {
            let c = rel
                .as_nondispersive()
                .ok_or_else(|| mismatch("nondispersive", rel))?;
            Ok(u_nondispersive(src, c, x, t))
        }
        BurstEvaluator::ExactQuadratic => {
            let d = rel
                .as_quadratic()
                .ok_or_else(|| mismatch("quadratic", rel))?;
            Ok(u_quadratic(src, d, x, t))
        }
        BurstEvaluator::Approximate => Ok(approx_general::u_approx(src, rel, x, t)?),
        BurstEvaluator::PvQuadrature(cfg) => Ok(pv_quadrature::u_integral(src, rel, x, t, cfg)?),
    }
}

fn mismatch(expected: &'static str, rel: &DispersionRelation) -> ClosedFormError {
    ClosedFormError::EvaluatorMismatch {
        expected,
        found: format!("{rel:?}"),
    }
}

/// Field value on the moving front x = v_g·t = 2DKt of the quadratic
/// switch-on solution, as an explicit function of t alone: a sine at the
/// source frequency with amplitude near A/2, a slowly decaying drift
/// term, and a third-harmonic pair. Identical to
/// `u_quadratic(src, d, 2DKt, t)` by substitution. Returns 0 for t ≤ 0.
pub fn front_oscillation(src: &SourceSignal, d: f64, t: f64) -> f64 {
    let _ = d; // the trace depends on D and t only through Ωt
    if t <= 0.0 {
        return 0.0;
    }
    let a = src.amplitude();
    let omega_t = src.omega() * t;
    let z = (2.0 * omega_t / PI).sqrt();
    let drift = fresnel_pair(z);
    let third = fresnel_pair(2.0 * z);
    let (sin3, cos3) = (3.0 * omega_t).sin_cos();
    -0.5 * a * omega_t.sin()
        + a * (drift.c_value - drift.s_value)
        + 0.5 * a * (1.0 - third.c_value - third.s_value) * sin3
        - 0.5 * a * (third.c_value - third.s_value) * cos3
}

/// Asymptotic amplitude of [`front_oscillation`]'s source-frequency
/// component: (A/2)·√((1 − q)² + q²) with q = 3/(2√(2πΩt)). Tends to
/// A/2 from below as t → ∞.
pub fn front_amplitude_asymptotic(src: &SourceSignal, t: f64) -> f64 {
    let q = 3.0 / (2.0 * (2.0 * PI * src.omega() * t).sqrt());
    0.5 * src.amplitude() * ((1.0 - q) * (1.0 - q) + q * q).sqrt()
}

/// Front-relative Fresnel argument (2DKt − x)/√(2πDt): positive behind
/// the front, zero on it, negative ahead.
fn front_argument(omega: f64, d: f64, x: f64, t: f64) -> f64 {
    let k = (omega / d).sqrt();
    (2.0 * d * k * t - x) / (2.0 * PI * d * t).sqrt()
}

/// Approximate envelope of the quadratic switch-on field near the
/// front: (A/√2)·√((C + ½)² + (S + ½)²) at the front-relative argument.
/// Rises from 0 ahead of the front to A behind it; exactly A/2 at
/// x = v_g·t.
pub fn envelope_on(src: &SourceSignal, d: f64, x: f64, t: f64) -> f64 {
    let f = fresnel_pair(front_argument(src.omega(), d, x, t));
    let c = f.c_value + 0.5;
    let s = f.s_value + 0.5;
    src.amplitude() / SQRT_2 * (c * c + s * s).sqrt()
}

/// Approximate envelope of the quadratic switch-off field: same form as
/// [`envelope_on`] with (C − ½, S − ½). Falls from A ahead of the front
/// to 0 behind it; exactly A/2 at x = v_g·t.
pub fn envelope_off(src: &SourceSignal, d: f64, x: f64, t: f64) -> f64 {
    let f = fresnel_pair(front_argument(src.omega(), d, x, t));
    let c = f.c_value - 0.5;
    let s = f.s_value - 0.5;
    src.amplitude() / SQRT_2 * (c * c + s * s).sqrt()
}

/// Local phase shift of the switch-on field relative to the steady
/// carrier sin(Ωt − Kx): atan2(C − S, 1 + C + S) at the front-relative
/// argument, so that the carrier-riding part of the field equals
/// envelope_on · sin(Ωt − Kx + phase_shift).
pub fn phase_shift(src: &SourceSignal, d: f64, x: f64, t: f64) -> f64 {
    let f = fresnel_pair(front_argument(src.omega(), d, x, t));
    (f.c_value - f.s_value).atan2(1.0 + f.c_value + f.s_value)
}

/// Spatial slope of [`envelope_on`] at the front x = v_g·t, exactly
/// −A/√(2πDt): the transition layer between ON and OFF flattens as
/// t^{-1/2}, i.e. its thickness grows as t^{1/2}.
pub fn envelope_front_slope(src: &SourceSignal, d: f64, t: f64) -> f64 {
    -src.amplitude() / (2.0 * PI * d * t).sqrt()
}
