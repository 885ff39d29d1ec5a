//! Eigenvalues of the clamped plate (Dirichlet biharmonic operator) on
//! unit-area rectangles `R_a = [0, a] x [0, 1/a]`.
//!
//! The crate is organised bottom-up:
//!
//! - [`numerics`]: bisection, Gauss-Legendre rules, dense symmetric
//!   (generalized) eigenvalue solver.
//! - [`beam`]: clamped-beam frequencies and modes, and the first
//!   eigenvalue `rho(alpha)` of the tension-perturbed beam.
//! - [`bounds`]: lower bounds for `lambda_1(a)` and the bisection that
//!   brackets the optimal aspect ratio.
//! - [`spectra`]: exact Dirichlet-Laplacian and Navier spectra, Weyl
//!   asymptotics and minimiser scans.
//! - [`ritz`]: Rayleigh-Ritz upper bounds with tensor beam bases.

pub mod aspect;
pub mod beam;
pub mod bounds;
pub mod error;
pub mod interval;
pub mod numerics;
pub mod ritz;
pub mod spectra;

pub use aspect::RectAspect;
pub use error::{Error, Result};
pub use interval::Interval;

/// Lower enclosure value for the first clamped eigenvalue of the unit square.
pub const WIENER_LOWER: f64 = 1294.933940;
/// Upper enclosure value for the first clamped eigenvalue of the unit square.
pub const WIENER_UPPER: f64 = 1294.933988;

/// Interval bracketing the first clamped eigenvalue of the unit square.
pub fn wiener_enclosure() -> Interval {
    Interval {
        lo: WIENER_LOWER,
        hi: WIENER_UPPER,
    }
}
