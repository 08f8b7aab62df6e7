//! Dispersion relations ω(k), their derived velocities, and the source
//! signal description.
//!
//! A dispersion relation maps wavenumber `k` to angular frequency `ω`.
//! Three media are built in — nondispersive `ω = ck`, quadratic `ω = Dk²`
//! (thin vibrating beam), and Klein-Gordon `ω = √(c²k² + ω₀²)` — plus a
//! custom variant that supplies its own ω and derivatives. All relations
//! are required to be even in `k`; the built-ins are even by construction
//! and custom ones are probed by sampling at the points of use.
//!
//! Derived quantities: phase velocity `v_p = ω/k`, group velocity
//! `v_g = dω/dk` (the speed of the ON-OFF boundary), curvature
//! `γ = ½·d²ω/dk²` (the rate at which the boundary layer spreads,
//! `√(γt)`), and the wavenumber inversion `K` with `ω(K) = Ω`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Errors from dispersion-relation construction and queries.
#[derive(Debug, Error, PartialEq)]
pub enum DispersionError {
    /// A constructor parameter violated its positivity constraint.
    #[error("parameter {name} must be positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },
    /// Phase velocity requested at k = 0.
    #[error("phase velocity is undefined at k = 0")]
    PhaseVelocityAtZero,
    /// No positive wavenumber maps to the requested frequency.
    #[error("no real wavenumber: {omega} is outside the range of ω over k > 0{detail}")]
    NoRealWavenumber { omega: f64, detail: String },
    /// A custom relation was found non-monotone while inverting ω.
    #[error("ambiguous wavenumber: ω(k) is not strictly increasing near k = {near_k}")]
    AmbiguousWavenumber { near_k: f64 },
    /// A custom relation failed the even-parity probe.
    #[error("parity violation: ω({k}) = {omega_pos} but ω({minus_k}) = {omega_neg}")]
    ParityViolation {
        k: f64,
        minus_k: f64,
        omega_pos: f64,
        omega_neg: f64,
    },
    /// Source-signal parameter out of range.
    #[error("source signal: {0}")]
    InvalidSource(String),
}

type OmegaFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A user-supplied dispersion relation: ω together with its first two
/// derivatives (no automatic differentiation — the contract stays
/// explicit and testable against finite differences).
#[derive(Clone)]
pub struct CustomDispersion {
    omega: OmegaFn,
    d_omega: OmegaFn,
    d2_omega: OmegaFn,
}

enum Family {
    Nondispersive { c: f64 },
    Quadratic { d: f64 },
    KleinGordon { c: f64, omega0: f64 },
    Custom(CustomDispersion),
}

/// A dispersion relation ω(k), even in k, positive for k > 0.
///
/// Immutable after construction; share freely across threads.
///
/// For custom relations, whether the integral-form solution converges
/// (how ω behaves as k → ∞) is the caller's responsibility; the
/// quadrature engine reports non-convergence rather than guessing.
pub struct DispersionRelation {
    family: Family,
}

impl fmt::Debug for DispersionRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::Nondispersive { c } => write!(f, "Nondispersive {{ c: {c} }}"),
            Family::Quadratic { d } => write!(f, "Quadratic {{ d: {d} }}"),
            Family::KleinGordon { c, omega0 } => {
                write!(f, "KleinGordon {{ c: {c}, omega0: {omega0} }}")
            }
            Family::Custom(_) => write!(f, "Custom {{ .. }}"),
        }
    }
}

impl DispersionRelation {
    /// ω = ck (every wavelength travels at the same speed `c > 0`).
    pub fn nondispersive(c: f64) -> Result<Self, DispersionError> {
        require_positive("c", c)?;
        Ok(Self {
            family: Family::Nondispersive { c },
        })
    }

    /// ω = Dk² (thin beam; `D = √(EI/μ)` in beam terms, `D > 0`).
    pub fn quadratic(d: f64) -> Result<Self, DispersionError> {
        require_positive("D", d)?;
        Ok(Self {
            family: Family::Quadratic { d },
        })
    }

    /// ω = √(c²k² + ω₀²) (relativistic/plasma-type medium with cutoff
    /// frequency `ω₀ > 0`).
    pub fn klein_gordon(c: f64, omega0: f64) -> Result<Self, DispersionError> {
        require_positive("c", c)?;
        require_positive("omega0", omega0)?;
        Ok(Self {
            family: Family::KleinGordon { c, omega0 },
        })
    }

    /// A caller-supplied relation; `d_omega` and `d2_omega` must be the
    /// first and second derivatives of `omega`. The relation must be even
    /// in k — violations surface as errors where evenness is relied on.
    pub fn custom(
        omega: impl Fn(f64) -> f64 + Send + Sync + 'static,
        d_omega: impl Fn(f64) -> f64 + Send + Sync + 'static,
        d2_omega: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            family: Family::Custom(CustomDispersion {
                omega: Arc::new(omega),
                d_omega: Arc::new(d_omega),
                d2_omega: Arc::new(d2_omega),
            }),
        }
    }

    /// Angular frequency at wavenumber `k`. Even in `k`, as befits a
    /// real wave equation.
    pub fn omega(&self, k: f64) -> f64 {
        match &self.family {
            Family::Nondispersive { c } => c * k.abs(),
            Family::Quadratic { d } => d * k * k,
            Family::KleinGordon { c, omega0 } => (c * c * k * k + omega0 * omega0).sqrt(),
            Family::Custom(f) => (f.omega)(k),
        }
    }

    /// Group velocity dω/dk — the speed of the ON-OFF boundary.
    pub fn group_velocity(&self, k: f64) -> f64 {
        match &self.family {
            Family::Nondispersive { c } => c * k.signum(),
            Family::Quadratic { d } => 2.0 * d * k,
            Family::KleinGordon { c, omega0 } => {
                c * c * k / (c * c * k * k + omega0 * omega0).sqrt()
            }
            Family::Custom(f) => (f.d_omega)(k),
        }
    }

    /// Phase velocity ω/k — the speed of individual crests. Undefined at
    /// k = 0.
    pub fn phase_velocity(&self, k: f64) -> Result<f64, DispersionError> {
        if k == 0.0 {
            return Err(DispersionError::PhaseVelocityAtZero);
        }
        Ok(self.omega(k) / k)
    }

    /// Curvature γ = ½·d²ω/dk², the front-broadening coefficient.
    ///
    /// Exactly zero for the nondispersive medium (downstream code branches
    /// on γ = 0 for the sharp-front limit).
    pub fn curvature(&self, k: f64) -> f64 {
        match &self.family {
            Family::Nondispersive { .. } => 0.0,
            Family::Quadratic { d } => *d,
            Family::KleinGordon { c, omega0 } => {
                let w = (c * c * k * k + omega0 * omega0).sqrt();
                0.5 * c * c * omega0 * omega0 / (w * w * w)
            }
            Family::Custom(f) => 0.5 * (f.d2_omega)(k),
        }
    }

    /// The unique `K > 0` with `ω(K) = omega` — analytic for built-ins,
    /// bracketed bisection (1e-12 relative) for custom relations, which
    /// are assumed strictly increasing on k > 0 and rejected otherwise.
    pub fn wavenumber_for(&self, omega: f64) -> Result<f64, DispersionError> {
        match &self.family {
            Family::Nondispersive { c } => {
                if omega <= 0.0 {
                    return Err(no_real(omega, ""));
                }
                Ok(omega / c)
            }
            Family::Quadratic { d } => {
                if omega <= 0.0 {
                    return Err(no_real(omega, ""));
                }
                Ok((omega / d).sqrt())
            }
            Family::KleinGordon { c, omega0 } => {
                if omega <= *omega0 {
                    return Err(no_real(
                        omega,
                        format!(" (at or below the cutoff frequency {omega0})"),
                    ));
                }
                Ok((omega * omega - omega0 * omega0).sqrt() / c)
            }
            Family::Custom(f) => invert_custom(f, omega),
        }
    }

    /// `Some(c)` if this is the nondispersive medium ω = ck.
    pub fn as_nondispersive(&self) -> Option<f64> {
        match self.family {
            Family::Nondispersive { c } => Some(c),
            _ => None,
        }
    }

    /// `Some(D)` if this is the quadratic medium ω = Dk².
    pub fn as_quadratic(&self) -> Option<f64> {
        match self.family {
            Family::Quadratic { d } => Some(d),
            _ => None,
        }
    }

    /// `Some((c, ω₀))` if this is the Klein-Gordon medium.
    pub fn as_klein_gordon(&self) -> Option<(f64, f64)> {
        match self.family {
            Family::KleinGordon { c, omega0 } => Some((c, omega0)),
            _ => None,
        }
    }

    /// Samples ω at ±k over a few scales and reports the first parity
    /// violation found. Built-ins are even by construction and never fail.
    pub fn check_even_parity(&self, k_scale: f64) -> Result<(), DispersionError> {
        if matches!(self.family, Family::Custom(_)) {
            for factor in [0.13, 0.5, 1.0, 1.7, 3.1] {
                let k = k_scale * factor;
                let plus = self.omega(k);
                let minus = self.omega(-k);
                let tol = 1e-9 * plus.abs().max(1.0);
                if (plus - minus).abs() > tol {
                    return Err(DispersionError::ParityViolation {
                        k,
                        minus_k: -k,
                        omega_pos: plus,
                        omega_neg: minus,
                    });
                }
            }
        }
        Ok(())
    }
}

fn require_positive(name: &'static str, value: f64) -> Result<(), DispersionError> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(DispersionError::NonPositiveParameter { name, value })
    }
}

fn no_real(omega: f64, detail: impl Into<String>) -> DispersionError {
    DispersionError::NoRealWavenumber {
        omega,
        detail: detail.into(),
    }
}

/// Bracket + bisection inversion for custom relations, with monotonicity
/// screening during the bracket scan.
fn invert_custom(f: &CustomDispersion, target: f64) -> Result<f64, DispersionError> {
    if !(target.is_finite() && target > 0.0) {
        return Err(no_real(target, ""));
    }
    // Geometric scan over 18 decades. The whole range is walked — even
    // after a bracket is found — because a later decrease in ω would make
    // the inversion ambiguous, and the screen must see it.
    let mut k_lo = 0.0f64;
    let mut k_hi = None;
    let mut prev_omega = (f.omega)(1e-9);
    let mut prev_k = 1e-9;
    let mut k = 1e-9;
    while k <= 1e9 {
        let w = (f.omega)(k);
        if w + 1e-9 * w.abs().max(1.0) < prev_omega {
            return Err(DispersionError::AmbiguousWavenumber { near_k: k });
        }
        if k_hi.is_none() && w >= target {
            k_hi = Some(k);
            k_lo = prev_k;
        }
        prev_omega = w;
        prev_k = k;
        k *= 1.3;
    }
    let Some(k_hi) = k_hi else {
        return Err(no_real(target, " (not reached by ω up to k = 1e9)"));
    };
    let (mut lo, mut hi) = (k_lo, k_hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (f.omega)(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-14 * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// How the source at x = 0 switches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwitchingPattern {
    /// Silent for t < 0, then `A sin Ωt`.
    OffToOn,
    /// Emitting `A sin Ωt` since forever, silent from t = 0.
    OnToOff,
    /// Silent, then exactly `n ≥ 1` full cycles of `A sin Ωt`, then silent.
    Burst(u32),
}

/// The harmonic source `u(0, t) = A sin Ωt` with its switching pattern.
///
/// For a Klein-Gordon medium the source frequency must exceed the cutoff
/// ω₀ for a real wavenumber to exist; that surfaces as an error from
/// [`DispersionRelation::wavenumber_for`] at the point of use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceSignal {
    amplitude: f64,
    omega: f64,
    pattern: SwitchingPattern,
}

impl SourceSignal {
    /// Validates `amplitude > 0`, `omega > 0`, and `n ≥ 1` for bursts.
    pub fn new(
        amplitude: f64,
        omega: f64,
        pattern: SwitchingPattern,
    ) -> Result<Self, DispersionError> {
        if !(amplitude > 0.0 && amplitude.is_finite()) {
            return Err(DispersionError::InvalidSource(format!(
                "amplitude must be positive, got {amplitude}"
            )));
        }
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(DispersionError::InvalidSource(format!(
                "angular frequency must be positive, got {omega}"
            )));
        }
        if let SwitchingPattern::Burst(n) = pattern {
            if n == 0 {
                return Err(DispersionError::InvalidSource(
                    "burst must contain at least one cycle".into(),
                ));
            }
        }
        Ok(Self {
            amplitude,
            omega,
            pattern,
        })
    }

    /// Source amplitude A.
    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    /// Source angular frequency Ω.
    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Switching pattern.
    pub fn pattern(&self) -> SwitchingPattern {
        self.pattern
    }

    /// Oscillation period T = 2π/Ω.
    pub fn period(&self) -> f64 {
        2.0 * PI / self.omega
    }

    /// Same signal with a different switching pattern.
    pub fn with_pattern(&self, pattern: SwitchingPattern) -> Self {
        Self { pattern, ..*self }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kg_unit() -> DispersionRelation {
        DispersionRelation::klein_gordon(1.0, 1.0).unwrap()
    }

    #[test]
    fn omega_of_builtins() {
        assert_eq!(DispersionRelation::quadratic(1.0).unwrap().omega(2.0), 4.0);
        assert_eq!(kg_unit().omega(0.0), 1.0);
        assert_eq!(
            DispersionRelation::nondispersive(3.0).unwrap().omega(2.0),
            6.0
        );
    }

    #[test]
    fn derived_velocities_of_builtins() {
        let quad = DispersionRelation::quadratic(0.7).unwrap();
        let k = 1.3;
        assert!((quad.group_velocity(k) - 2.0 * 0.7 * k).abs() < 1e-15);
        assert!((quad.phase_velocity(k).unwrap() - 0.7 * k).abs() < 1e-15);
        // group velocity is twice the phase velocity at every wavenumber
        assert!((quad.group_velocity(k) - 2.0 * quad.phase_velocity(k).unwrap()).abs() < 1e-15);
        assert_eq!(quad.curvature(k), 0.7);

        let nd = DispersionRelation::nondispersive(2.5).unwrap();
        assert_eq!(nd.group_velocity(0.3), 2.5);
        assert_eq!(nd.phase_velocity(0.3).unwrap(), 2.5);
        assert_eq!(nd.curvature(0.3), 0.0);

        // Klein-Gordon at Ω = 5ω₀: v_g = c²K/Ω, γ = c²ω₀²/(2Ω³).
        let kg = kg_unit();
        let k_cap = kg.wavenumber_for(5.0).unwrap();
        assert!((k_cap - 24f64.sqrt()).abs() < 1e-12);
        assert!((kg.group_velocity(k_cap) - k_cap / 5.0).abs() < 1e-12);
        assert!((kg.curvature(k_cap) - 1.0 / 250.0).abs() < 1e-15);
    }

    #[test]
    fn analytic_derivatives_match_finite_differences() {
        let rels = [
            DispersionRelation::nondispersive(1.7).unwrap(),
            DispersionRelation::quadratic(0.9).unwrap(),
            DispersionRelation::klein_gordon(1.2, 0.8).unwrap(),
        ];
        let mut state = 0x9E3779B97F4A7C15u64;
        for _ in 0..100 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            let k = (state >> 11) as f64 / (1u64 << 53) as f64 * 10.0;
            let k = k.max(1e-3);
            let h = 1e-5 * k.max(0.1);
            // The second difference needs a much larger step: its roundoff
            // error grows as ε/h², so h ~ ε^(1/4) balances it against the
            // O(h²) truncation term.
            let h2 = 1e-3 * k.max(0.1);
            for rel in &rels {
                let fd1 = (rel.omega(k + h) - rel.omega(k - h)) / (2.0 * h);
                let fd2 = (rel.omega(k + h2) - 2.0 * rel.omega(k) + rel.omega(k - h2)) / (h2 * h2);
                let vg = rel.group_velocity(k);
                assert!(
                    (vg - fd1).abs() <= 1e-6 * vg.abs().max(1e-3),
                    "v_g mismatch at k = {k} for {rel:?}"
                );
                assert!(
                    (rel.curvature(k) - 0.5 * fd2).abs() <= 1e-5 * rel.curvature(k).abs().max(1e-3),
                    "curvature mismatch at k = {k} for {rel:?}"
                );
            }
        }
    }

    #[test]
    fn wavenumber_inversion_round_trips() {
        let rels = [
            DispersionRelation::nondispersive(2.0).unwrap(),
            DispersionRelation::quadratic(0.5).unwrap(),
            DispersionRelation::klein_gordon(1.0, 0.3).unwrap(),
        ];
        for rel in &rels {
            for omega in [0.7, 1.0, 4.0, 33.0] {
                let k = rel.wavenumber_for(omega).unwrap();
                assert!(k > 0.0);
                assert!(
                    (rel.omega(k) - omega).abs() <= 1e-10 * omega,
                    "round trip for {rel:?} at Ω = {omega}"
                );
            }
        }
        assert_eq!(
            DispersionRelation::quadratic(1.0)
                .unwrap()
                .wavenumber_for(4.0)
                .unwrap(),
            2.0
        );
    }

    #[test]
    fn klein_gordon_below_cutoff_is_rejected() {
        let err = kg_unit().wavenumber_for(0.5).unwrap_err();
        assert!(matches!(err, DispersionError::NoRealWavenumber { .. }));
        // exactly at the cutoff there is no k > 0 either
        assert!(kg_unit().wavenumber_for(1.0).is_err());
    }

    #[test]
    fn custom_inversion_agrees_with_analytic() {
        // The Klein-Gordon relation dressed as a custom closure; the
        // bisection result must match the closed-form inversion.
        let custom = DispersionRelation::custom(
            |k| (k * k + 1.0).sqrt(),
            |k| k / (k * k + 1.0).sqrt(),
            |k| {
                let w2 = k * k + 1.0;
                1.0 / (w2 * w2.sqrt())
            },
        );
        let k = custom.wavenumber_for(5.0).unwrap();
        assert!((k - 24f64.sqrt()).abs() < 1e-11 * 24f64.sqrt());
    }

    #[test]
    fn non_monotone_custom_is_ambiguous() {
        let humped =
            DispersionRelation::custom(|k| k.abs() * (-k * k / 4.0).exp() * 10.0, |_| 0.0, |_| 0.0);
        assert!(matches!(
            humped.wavenumber_for(5.0),
            Err(DispersionError::AmbiguousWavenumber { .. })
        ));
    }

    #[test]
    fn even_parity_sampling() {
        let rels = [
            DispersionRelation::nondispersive(1.0).unwrap(),
            DispersionRelation::quadratic(2.0).unwrap(),
            DispersionRelation::klein_gordon(0.7, 1.1).unwrap(),
        ];
        let mut state = 7u64;
        for _ in 0..100 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            let k = (state >> 11) as f64 / (1u64 << 53) as f64 * 10.0 + 1e-6;
            for rel in &rels {
                let plus = rel.omega(k);
                let minus = rel.omega(-k);
                assert!((plus - minus).abs() <= 1e-12 * plus.abs());
            }
        }
        for rel in &rels {
            rel.check_even_parity(1.0).unwrap();
        }
        let odd = DispersionRelation::custom(|k| k, |_| 1.0, |_| 0.0);
        assert!(matches!(
            odd.check_even_parity(1.0),
            Err(DispersionError::ParityViolation { .. })
        ));
    }

    #[test]
    fn phase_velocity_domain_error() {
        let rel = DispersionRelation::quadratic(1.0).unwrap();
        assert_eq!(
            rel.phase_velocity(0.0).unwrap_err(),
            DispersionError::PhaseVelocityAtZero
        );
    }

    #[test]
    fn constructor_validation() {
        assert!(DispersionRelation::nondispersive(0.0).is_err());
        assert!(DispersionRelation::quadratic(-1.0).is_err());
        assert!(DispersionRelation::klein_gordon(1.0, 0.0).is_err());
        assert!(SourceSignal::new(0.0, 1.0, SwitchingPattern::OffToOn).is_err());
        assert!(SourceSignal::new(1.0, -2.0, SwitchingPattern::OffToOn).is_err());
        assert!(SourceSignal::new(1.0, 1.0, SwitchingPattern::Burst(0)).is_err());
        let src = SourceSignal::new(2.0, 4.0, SwitchingPattern::Burst(3)).unwrap();
        assert_eq!(src.amplitude(), 2.0);
        assert!((src.period() - PI / 2.0).abs() < 1e-15);
    }
}
