//! Clamped-beam spectral problems on `(0, 1)`.
//!
//! The clamped-beam frequencies `omega_j` are the positive roots of
//! `cos(w) cosh(w) = 1`; the beam eigenvalues are `omega_j^4`. The
//! tension-perturbed problem
//!
//! ```text
//! y'''' - 2 alpha y'' = rho y,   y(0) = y(1) = y'(0) = y'(1) = 0
//! ```
//!
//! has first eigenvalue `rho(alpha)`, computed here from its characteristic
//! determinant and, independently, by finite differences.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::numerics::linalg::{sym_eigen, SymmetricMatrix};
use crate::numerics::quadrature::gauss_legendre;
use crate::numerics::roots::bisect_root;

/// Largest supported beam mode index.
pub const MAX_MODE: usize = 64;

const FREQUENCY_TOL: f64 = 1e-13;

/// `cos(w) - 1/cosh(w)`: same sign and roots as `cos(w) cosh(w) - 1`, but bounded.
pub fn scaled_frequency_residual(w: f64) -> f64 {
    w.cos() - sech(w)
}

fn sech(x: f64) -> f64 {
    let e = (-x.abs()).exp();
    2.0 * e / (1.0 + e * e)
}

fn check_index(j: usize) -> Result<()> {
    if (1..=MAX_MODE).contains(&j) {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange(j))
    }
}

/// `omega_j`, the `j`-th positive root of `cos(w) cosh(w) = 1`.
pub fn beam_frequency(j: usize) -> Result<f64> {
    check_index(j)?;
    let centre = (j as f64 + 0.5) * PI;
    let bracket = Interval {
        lo: centre - 0.4,
        hi: centre + 0.4,
    };
    let root = bisect_root(scaled_frequency_residual, bracket, FREQUENCY_TOL)?;
    Ok(root.midpoint())
}

/// `omega_1^4`, the first clamped-beam eigenvalue (`rho(0)`).
pub fn rho_zero() -> f64 {
    static VALUE: OnceLock<f64> = OnceLock::new();
    *VALUE.get_or_init(|| beam_frequency(1).expect("mode 1 is in range").powi(4))
}

/// Normalised clamped-beam eigenfunction
/// `X_j(t) = cosh(wt) - cos(wt) - beta (sinh(wt) - sin(wt))`.
///
/// Evaluated in a rearranged form free of the `cosh - beta sinh`
/// cancellation, so all modes up to [`MAX_MODE`] are accurate on all of `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamMode {
    pub index: usize,
    pub frequency: f64,
    pub beta: f64,
    /// Multiplier making `int_0^1 X_j^2 = 1`.
    pub norm: f64,
    /// `exp(-w) - cos(w) + sin(w)`, so that `beta - 1 = shift / (sinh w - sin w)`.
    shift: f64,
    /// `(sinh w - sin w) / (e^w / 2)`.
    denom: f64,
}

impl BeamMode {
    pub fn new(j: usize) -> Result<Self> {
        let w = beam_frequency(j)?;
        let e = (-w).exp();
        let denom = 1.0 - e * e - 2.0 * w.sin() * e;
        let beta = (1.0 + e * e - 2.0 * w.cos() * e) / denom;
        let shift = e - w.cos() + w.sin();
        let mut mode = BeamMode {
            index: j,
            frequency: w,
            beta,
            norm: 1.0,
            shift,
            denom,
        };
        let mass = mode.integrate_product(|m, t| m.value(t).powi(2));
        mode.norm = 1.0 / mass.sqrt();
        Ok(mode)
    }

    /// Integrates `f(self, t)` over `[0, 1]` with enough resolution for the
    /// boundary layers and oscillations of this mode.
    fn integrate_product<F: Fn(&BeamMode, f64) -> f64>(&self, f: F) -> f64 {
        let rule = gauss_legendre(64).expect("valid order");
        let panels = 4 + self.index / 4;
        let (nodes, weights) = rule.composite(0.0, 1.0, panels);
        nodes.iter().zip(&weights).map(|(&t, &w)| w * f(self, t)).sum()
    }

    /// `sinh(wt) / (sinh w - sin w)` and `cosh(wt) / (sinh w - sin w)`.
    fn hyperbolic_ratios(&self, t: f64) -> (f64, f64) {
        let w = self.frequency;
        let grow = (w * (t - 1.0)).exp();
        let decay = (-w * (t + 1.0)).exp();
        ((grow - decay) / self.denom, (grow + decay) / self.denom)
    }

    pub fn value(&self, t: f64) -> f64 {
        let x = self.frequency * t;
        let (rs, _) = self.hyperbolic_ratios(t);
        self.norm * ((-x).exp() - self.shift * rs - x.cos() + self.beta * x.sin())
    }

    pub fn derivative(&self, t: f64) -> f64 {
        let w = self.frequency;
        let x = w * t;
        let (_, rc) = self.hyperbolic_ratios(t);
        self.norm * w * (-(-x).exp() - self.shift * rc + x.sin() + self.beta * x.cos())
    }

    pub fn second_derivative(&self, t: f64) -> f64 {
        let w = self.frequency;
        let x = w * t;
        let (rs, _) = self.hyperbolic_ratios(t);
        self.norm * w * w * ((-x).exp() - self.shift * rs + x.cos() - self.beta * x.sin())
    }

    /// `int_0^1 (X_j')^2`.
    pub fn slope_energy(&self) -> f64 {
        self.integrate_product(|m, t| m.derivative(t).powi(2))
    }

    /// `int_0^1 (X_j'')^2`, equal to `omega_j^4` for the exact mode.
    pub fn bending_energy(&self) -> f64 {
        self.integrate_product(|m, t| m.second_derivative(t).powi(2))
    }
}

/// Shorthand for [`BeamMode::new`].
pub fn beam_mode(j: usize) -> Result<BeamMode> {
    BeamMode::new(j)
}

/// `int_0^1 (X_1')^2`, the slope energy of the first clamped mode.
pub fn first_mode_slope_energy() -> f64 {
    static VALUE: OnceLock<f64> = OnceLock::new();
    *VALUE.get_or_init(|| BeamMode::new(1).expect("mode 1 is in range").slope_energy())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhoMethod {
    Determinant,
    FiniteDifference,
}

impl RhoMethod {
    pub fn name(self) -> &'static str {
        match self {
            RhoMethod::Determinant => "determinant",
            RhoMethod::FiniteDifference => "finite_difference",
        }
    }
}

/// First eigenvalue of the tension-perturbed clamped beam.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhoResult {
    pub alpha: f64,
    pub rho: f64,
    pub enclosure: Interval,
    pub method: RhoMethod,
    /// `|D(rho)|` for the determinant method; Richardson error estimate for
    /// finite differences.
    pub residual: f64,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("alpha = {alpha} must be finite and >= 0")))
    }
}

/// Characteristic function of the clamped problem divided by `cosh p`.
///
/// With `s = sqrt(alpha^2 + lambda)`, `p^2 = s + alpha`, `q^2 = s - alpha`,
/// eigenvalues are the positive zeros of
/// `2pq (1 - cosh p cos q) + (p^2 - q^2) sinh p sin q`; note `p^2 - q^2 = 2 alpha`.
pub fn characteristic(alpha: f64, lambda: f64) -> f64 {
    let s = (alpha * alpha + lambda).sqrt();
    let p = (s + alpha).sqrt();
    // s - alpha without cancellation
    let q = (lambda / (s + alpha)).sqrt();
    2.0 * p * q * (sech(p) - q.cos()) + 2.0 * alpha * p.tanh() * q.sin()
}

const BRACKET_DOUBLINGS: usize = 16;

/// `rho(alpha)` as the smallest positive zero of the characteristic function.
///
/// The search bracket runs from just below `omega_1^4` (a lower bound by
/// monotonicity) to the Rayleigh quotient of the unperturbed first mode,
/// `omega_1^4 + 2 alpha int (X_1')^2`; its upper end is doubled if needed.
pub fn rho_determinant(alpha: f64, tol: f64) -> Result<RhoResult> {
    check_alpha(alpha)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance {tol} must be positive")));
    }
    let f = |lambda: f64| characteristic(alpha, lambda);
    let base = rho_zero();
    let lo = base * (1.0 - 1e-3);
    let mut hi = (base + 2.0 * alpha * first_mode_slope_energy()) * (1.0 + 1e-6);
    let f_lo = f(lo);
    if !f_lo.is_finite() {
        return Err(Error::NonFinite { at: lo });
    }
    let mut found = false;
    for _ in 0..=BRACKET_DOUBLINGS {
        let f_hi = f(hi);
        if !f_hi.is_finite() {
            return Err(Error::NonFinite { at: hi });
        }
        if f_hi.signum() != f_lo.signum() {
            found = true;
            break;
        }
        hi = lo + 2.0 * (hi - lo);
    }
    if !found {
        return Err(Error::BracketFailure {
            stage: "rho characteristic equation",
        });
    }
    let enclosure = bisect_root(f, Interval { lo, hi }, tol)?;
    let rho = enclosure.midpoint();
    Ok(RhoResult {
        alpha,
        rho,
        enclosure,
        method: RhoMethod::Determinant,
        residual: f(rho).abs(),
    })
}

/// Matrix of `y'''' - 2 alpha y''` on `n` uniform cells with clamped ends
/// (ghost values `y_{-1} = y_1`, `y_{n+1} = y_{n-1}`), acting on the interior
/// values `y_1 .. y_{n-1}`.
fn fd_matrix(alpha: f64, cells: usize) -> SymmetricMatrix {
    let h = 1.0 / cells as f64;
    let h4 = h.powi(4);
    let h2 = h * h;
    let m = cells - 1;
    SymmetricMatrix::from_fn(m, |i, j| match j - i {
        0 => {
            let end = i == 0 || i == m - 1;
            (if end { 7.0 } else { 6.0 }) / h4 + 4.0 * alpha / h2
        }
        1 => -4.0 / h4 - 2.0 * alpha / h2,
        2 => 1.0 / h4,
        _ => 0.0,
    })
}

/// Rayleigh quotient of [`fd_matrix`] for a grid function with zero end
/// values. The matrix factors as `D^T W D / h^4 + 2 alpha G^T G / h^2` (second
/// differences with ghost values, trapezoid weights `W`; first differences),
/// so the quotient is a sum of squares, free of the `eps / h^4` cancellation
/// that limits the eigensolver on fine grids.
fn fd_rayleigh_quotient(alpha: f64, v: &[f64]) -> f64 {
    let n = v.len() - 1;
    let h = 1.0 / n as f64;
    let at = |i: isize| -> f64 {
        // ghost values mirror the first interior value at each clamped end
        match i {
            -1 => v[1],
            i if i as usize == n + 1 => v[n - 1],
            i => v[i as usize],
        }
    };
    let mut bending = 0.0;
    for i in 0..=n as isize {
        let d2 = at(i - 1) - 2.0 * at(i) + at(i + 1);
        let w = if i == 0 || i as usize == n { 0.5 } else { 1.0 };
        bending += w * d2 * d2;
    }
    let stretching: f64 = v.windows(2).map(|w| (w[1] - w[0]).powi(2)).sum();
    let mass: f64 = v.iter().map(|x| x * x).sum();
    (bending / h.powi(4) + 2.0 * alpha * stretching / (h * h)) / mass
}

/// Ground state of the finite-difference problem: eigenvalue and the grid
/// function (with zero end values), normalised so `h * sum(v^2) = 1`.
pub(crate) fn fd_ground_state(alpha: f64, cells: usize) -> Result<(f64, Vec<f64>)> {
    let dec = sym_eigen(&fd_matrix(alpha, cells), 1)?;
    let h = 1.0 / cells as f64;
    let mut v = Vec::with_capacity(cells + 1);
    v.push(0.0);
    v.extend_from_slice(&dec.vectors[0]);
    v.push(0.0);
    let scale = 1.0 / (h * v.iter().map(|x| x * x).sum::<f64>()).sqrt();
    v.iter_mut().for_each(|x| *x *= scale);
    Ok((fd_rayleigh_quotient(alpha, &v), v))
}

/// Smallest finite-difference eigenvalue on `cells` uniform cells.
pub fn rho_fd_single(alpha: f64, cells: usize) -> Result<f64> {
    check_alpha(alpha)?;
    if cells < 8 {
        return Err(Error::GridTooCoarse(cells));
    }
    Ok(fd_ground_state(alpha, cells)?.0)
}

/// `rho(alpha)` by second-order finite differences on `gridpoints` and
/// `gridpoints / 2` cells, Richardson-extrapolated.
///
/// The enclosure is centred on the extrapolated value with half-width
/// `|fine - coarse| / 3`, the estimated `C h^2` error of the fine grid.
pub fn rho_fd_oracle(alpha: f64, gridpoints: usize) -> Result<RhoResult> {
    check_alpha(alpha)?;
    if gridpoints < 32 {
        return Err(Error::GridTooCoarse(gridpoints));
    }
    let fine = rho_fd_single(alpha, gridpoints)?;
    let coarse = rho_fd_single(alpha, gridpoints / 2)?;
    let error = (fine - coarse).abs() / 3.0;
    let rho = fine + (fine - coarse) / 3.0;
    Ok(RhoResult {
        alpha,
        rho,
        enclosure: Interval {
            lo: rho - error,
            hi: rho + error,
        },
        method: RhoMethod::FiniteDifference,
        residual: error,
    })
}
