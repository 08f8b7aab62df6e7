//! Analytic and numerical machinery for ON-OFF signal propagation by
//! dispersive waves.
//!
//! A source at `x = 0` switches a harmonic oscillation `A sin Ωt` on (or
//! off, or on for `n` cycles) and the disturbance propagates into `x > 0`
//! through a medium described by a dispersion relation `ω(k)`. This crate
//! computes the resulting field `u(x, t)` four independent ways and checks
//! them against each other:
//!
//! - [`closed_form`]: exact solutions for the nondispersive medium
//!   (`ω = ck`) and the quadratically dispersive medium (`ω = Dk²`, e.g. a
//!   thin vibrating beam), plus front/envelope diagnostics.
//! - [`approx_general`]: the Fresnel-based approximation valid for any even
//!   dispersion relation, built from the group velocity and the curvature
//!   of `ω` at the source wavenumber.
//! - [`pv_quadrature`]: direct numerical evaluation of the integral-form
//!   solution, a principal-value integral over wavenumber space.
//! - [`pde_oracle`]: explicit finite-difference solvers for the three
//!   governing PDEs (wave, beam, Klein-Gordon), used as independent
//!   references.
//!
//! [`special_functions`] supplies the Fresnel integrals the closed forms
//! are built from; [`dispersion`] the dispersion-relation and source types;
//! [`grid`] the sampled-field container and CSV writer; [`verify`] the
//! named verification suites shared by the test harness and the CLI.
//!
//! Everything is pure and deterministic: the same inputs produce the same
//! bytes, regardless of thread count.

pub mod approx_general;
pub mod closed_form;
pub mod dispersion;
pub mod grid;
pub mod pde_oracle;
pub mod pv_quadrature;
pub mod special_functions;
pub mod verify;

pub use dispersion::{DispersionRelation, SourceSignal, SwitchingPattern};
pub use grid::FieldGrid;
