//! Fresnel-based approximate switch-on/switch-off solutions for an
//! arbitrary even dispersion relation.
//!
//! Expanding ω around the source wavenumber K to second order turns the
//! superposition integral into the same Fresnel structure as the
//! quadratic medium's exact solution, with the front travelling at
//! v_g = dω/dk and spreading at the rate set by the curvature
//! γ = ½·d²ω/dk². The result is a four-term expression: two quadrature
//! pairs riding the right- and left-going carriers. It is exact for the
//! nondispersive medium (where γ = 0 and the Fresnel factors collapse
//! to a step), and for the quadratic medium it differs from the exact
//! solution by precisely the carrier-free drift term.
//!
//! The accuracy of the truncation is not certified away from the front;
//! in particular, for media with a cutoff frequency the field ahead of
//! the front decays more slowly here than it should. That discrepancy
//! is reproduced, not corrected.

use std::f64::consts::{PI, SQRT_2};

use crate::dispersion::{DispersionError, DispersionRelation, SourceSignal};
use crate::special_functions::{fresnel, signum, FresnelPair};

fn fresnel_pair(argument: f64) -> FresnelPair {
    fresnel(argument).expect("Fresnel argument must be finite")
}

/// Carrier wavenumber, front speed, and spreading curvature for the
/// source frequency, with the even-parity screen applied.
fn front_parameters(
    src: &SourceSignal,
    rel: &DispersionRelation,
) -> Result<(f64, f64, f64), DispersionError> {
    let k = rel.wavenumber_for(src.omega())?;
    rel.check_even_parity(k)?;
    Ok((k, rel.group_velocity(k), rel.curvature(k)))
}

/// Approximate switch-on field for any even dispersion relation:
/// the four-term Fresnel expression built from v_g and γ at the carrier
/// wavenumber. Returns 0 for t ≤ 0.
///
/// When γ = 0 the Fresnel factors are replaced by their step-function
/// limits, which reproduces the sharp-front nondispersive solution
/// exactly (midpoint value on the front included).
///
/// Errors when no real carrier wavenumber exists for the source
/// frequency or when the relation fails the even-parity screen.
pub fn u_approx(
    src: &SourceSignal,
    rel: &DispersionRelation,
    x: f64,
    t: f64,
) -> Result<f64, DispersionError> {
    let (k, v_g, gamma) = front_parameters(src, rel)?;
    if t <= 0.0 {
        return Ok(0.0);
    }
    let a = src.amplitude();
    if gamma == 0.0 {
        return Ok(0.5
            * a
            * (1.0 + f64::from(signum(v_g * t - x)))
            * (src.omega() * t - k * x).sin());
    }
    let spread = (2.0 * PI * gamma.abs() * t).sqrt();
    let fm = fresnel_pair((v_g * t - x) / spread);
    let fp = fresnel_pair((v_g * t + x) / spread);
    let sign = f64::from(signum(gamma));
    let (sin_minus, cos_minus) = (src.omega() * t - k * x).sin_cos();
    let (sin_plus, cos_plus) = (src.omega() * t + k * x).sin_cos();
    Ok(0.5 * a * (1.0 + fm.c_value + fm.s_value) * sin_minus
        + 0.5 * a * sign * (fm.c_value - fm.s_value) * cos_minus
        + 0.5 * a * (1.0 - fp.c_value - fp.s_value) * sin_plus
        - 0.5 * a * sign * (fp.c_value - fp.s_value) * cos_plus)
}

/// Approximate switch-off field: the steady carrier minus the
/// approximate switch-on field, `A sin(Ωt − Kx) − u_approx(x, t)`.
/// For t < 0 this is the steady emission filling the axis.
pub fn u_approx_off(
    src: &SourceSignal,
    rel: &DispersionRelation,
    x: f64,
    t: f64,
) -> Result<f64, DispersionError> {
    let on = u_approx(src, rel, x, t)?;
    let k = rel.wavenumber_for(src.omega())?;
    Ok(src.amplitude() * (src.omega() * t - k * x).sin() - on)
}

/// Approximate envelope of the switch-on field near the front:
/// (A/√2)·√((C + ½)² + (S + ½)²) at the front-relative argument
/// (v_g·t − x)/√(2π|γ|t). A function of (x − v_g·t)/√(γt) alone, so
/// profiles at different times collapse in that variable; equals A/2
/// exactly at x = v_g·t. For γ = 0 it degenerates to a step of height A
/// with the midpoint value on the front.
pub fn envelope_approx(
    src: &SourceSignal,
    rel: &DispersionRelation,
    x: f64,
    t: f64,
) -> Result<f64, DispersionError> {
    let (c, s) = front_fresnel(src, rel, x, t)?;
    let (c, s) = (c + 0.5, s + 0.5);
    Ok(src.amplitude() / SQRT_2 * (c * c + s * s).sqrt())
}

/// Approximate envelope of the switch-off field: the same construction
/// as [`envelope_approx`] with (C − ½, S − ½), rising from 0 behind the
/// front to A ahead of it, again A/2 exactly at x = v_g·t.
pub fn envelope_approx_off(
    src: &SourceSignal,
    rel: &DispersionRelation,
    x: f64,
    t: f64,
) -> Result<f64, DispersionError> {
    let (c, s) = front_fresnel(src, rel, x, t)?;
    let (c, s) = (c - 0.5, s - 0.5);
    Ok(src.amplitude() / SQRT_2 * (c * c + s * s).sqrt())
}

/// Fresnel pair at the front-relative argument (v_g·t − x)/√(2π|γ|t),
/// degenerating to the ±½ step values when γ = 0.
fn front_fresnel(
    src: &SourceSignal,
    rel: &DispersionRelation,
    x: f64,
    t: f64,
) -> Result<(f64, f64), DispersionError> {
    let (_, v_g, gamma) = front_parameters(src, rel)?;
    Ok(if gamma == 0.0 {
        let half = 0.5 * f64::from(signum(v_g * t - x));
        (half, half)
    } else {
        let f = fresnel_pair((v_g * t - x) / (2.0 * PI * gamma.abs() * t).sqrt());
        (f.c_value, f.s_value)
    })
}
