//! Rayleigh-Ritz upper bounds for clamped-plate eigenvalues of `R_a`.
//!
//! Trial functions are tensor products `X_m(x / a) X_n(y a)` of clamped-beam
//! modes; they lie in `H^2_0(R_a)` and are orthonormal in `L^2(R_a)`. With
//! `s = x / a`, `t = y a` the Laplacian is `a^-2 d_ss + a^2 d_tt`, so the
//! stiffness entries reduce to the 1D integrals
//!
//! ```text
//! I_ij = int X_i X_j,   C_ij = int X_i'' X_j,   D_ij = int X_i'' X_j''
//! A_(mn),(pq) = a^-4 D_mp I_nq + a^4 I_mp D_nq + C_mp C_qn + C_pm C_nq
//! ```

use rayon::prelude::*;

use crate::aspect::RectAspect;
use crate::beam::BeamMode;
use crate::error::{Error, Result};
use crate::numerics::linalg::{sym_gen_eigs, SymmetricMatrix};
use crate::numerics::quadrature::gauss_legendre;

pub const MIN_MODES: usize = 1;
pub const MAX_MODES: usize = 40;
/// Mass matrix tolerance `max |B - I|`.
pub const MASS_TOLERANCE: f64 = 1e-6;

/// Tensor beam basis with `modes` functions per direction on `R_a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RitzBasisSpec {
    pub a: RectAspect,
    pub modes: usize,
}

impl RitzBasisSpec {
    pub fn new(a: RectAspect, modes: usize) -> Result<Self> {
        if !(MIN_MODES..=MAX_MODES).contains(&modes) {
            return Err(Error::InvalidInput(format!(
                "modes per direction {modes} outside {MIN_MODES}..={MAX_MODES}"
            )));
        }
        Ok(RitzBasisSpec { a, modes })
    }

    pub fn dimension(&self) -> usize {
        self.modes * self.modes
    }

    /// Gauss-Legendre order of the 1D integrals, `2M + 8`.
    pub fn quadrature_order(&self) -> usize {
        2 * self.modes + 8
    }

    /// Largest count of eigenvalues reported, half the basis dimension.
    pub fn max_count(&self) -> usize {
        self.dimension() / 2
    }
}

/// 1D beam-mode integrals `I`, `C`, `D` (row-major `modes x modes`).
#[derive(Debug, Clone)]
pub struct BeamIntegrals {
    pub modes: usize,
    pub mass: Vec<f64>,
    pub coupling: Vec<f64>,
    pub bending: Vec<f64>,
}

impl BeamIntegrals {
    pub fn compute(modes: usize, order: usize) -> Result<Self> {
        let rule = gauss_legendre(order)?;
        let (nodes, weights) = rule.mapped(0.0, 1.0);
        let basis = (1..=modes).map(BeamMode::new).collect::<Result<Vec<_>>>()?;
        let tab = |f: fn(&BeamMode, f64) -> f64| -> Vec<Vec<f64>> {
            basis
                .iter()
                .map(|m| nodes.iter().map(|&t| f(m, t)).collect())
                .collect()
        };
        let x = tab(BeamMode::value);
        let x2 = tab(BeamMode::second_derivative);
        let integrate = |u: &[f64], v: &[f64]| -> f64 {
            u.iter()
                .zip(v)
                .zip(&weights)
                .map(|((a, b), w)| a * b * w)
                .sum()
        };
        let mut mass = vec![0.0; modes * modes];
        let mut coupling = vec![0.0; modes * modes];
        let mut bending = vec![0.0; modes * modes];
        for i in 0..modes {
            for j in 0..modes {
                mass[i * modes + j] = integrate(&x[i], &x[j]);
                coupling[i * modes + j] = integrate(&x2[i], &x[j]);
                bending[i * modes + j] = integrate(&x2[i], &x2[j]);
            }
        }
        Ok(BeamIntegrals {
            modes,
            mass,
            coupling,
            bending,
        })
    }

    fn get(table: &[f64], modes: usize, i: usize, j: usize) -> f64 {
        table[i * modes + j]
    }
}

/// Stiffness `A` and mass `B` of the tensor basis. `scale` may be any
/// positive aspect, including `< 1`.
pub(crate) fn assemble_scaled(
    scale: f64,
    modes: usize,
    order: usize,
) -> Result<(SymmetricMatrix, SymmetricMatrix)> {
    let ints = BeamIntegrals::compute(modes, order)?;
    let s4 = scale.powi(4);
    let dim = modes * modes;
    let split = |k: usize| (k / modes, k % modes);
    let g = |t: &[f64], i, j| BeamIntegrals::get(t, modes, i, j);
    let a = SymmetricMatrix::from_fn(dim, |r, c| {
        let ((m, n), (p, q)) = (split(r), split(c));
        g(&ints.bending, m, p) * g(&ints.mass, n, q) / s4
            + s4 * g(&ints.mass, m, p) * g(&ints.bending, n, q)
            + g(&ints.coupling, m, p) * g(&ints.coupling, q, n)
            + g(&ints.coupling, p, m) * g(&ints.coupling, n, q)
    });
    let b = SymmetricMatrix::from_fn(dim, |r, c| {
        let ((m, n), (p, q)) = (split(r), split(c));
        g(&ints.mass, m, p) * g(&ints.mass, n, q)
    });
    let deviation = (0..dim)
        .flat_map(|i| (i..dim).map(move |j| (i, j)))
        .map(|(i, j)| (b.get(i, j) - if i == j { 1.0 } else { 0.0 }).abs())
        .fold(0.0, f64::max);
    if deviation > MASS_TOLERANCE {
        return Err(Error::QuadratureUnderResolved { deviation });
    }
    Ok((a, b))
}

/// Stiffness and mass matrices of the Ritz pencil. Basis function
/// `(m, n)` (1-based) sits at index `(m - 1) M + (n - 1)`.
pub fn assemble_ritz(spec: &RitzBasisSpec) -> Result<(SymmetricMatrix, SymmetricMatrix)> {
    assemble_scaled(spec.a.value(), spec.modes, spec.quadrature_order())
}

#[derive(Debug, Clone, PartialEq)]
pub struct RitzSolution {
    pub spec: RitzBasisSpec,
    /// Upper bounds for `lambda_1 .. lambda_count`, ascending.
    pub eigenvalues: Vec<f64>,
    /// `max |B - I|`, the quadrature error budget of the mass matrix.
    pub mass_deviation: f64,
    /// Largest stiffness entry dropped between parity classes (zero in exact
    /// arithmetic).
    pub parity_leak: f64,
}

impl RitzSolution {
    pub fn count(&self) -> usize {
        self.eigenvalues.len()
    }
}

/// Basis indices grouped by the parities of `(m, n)`. Odd-index beam modes are
/// even about the midpoint and vice versa, so the pencil is block diagonal.
fn parity_classes(modes: usize) -> [Vec<usize>; 4] {
    let mut classes: [Vec<usize>; 4] = Default::default();
    for m in 0..modes {
        for n in 0..modes {
            classes[(m % 2) * 2 + n % 2].push(m * modes + n);
        }
    }
    classes
}

fn solve_pencil(a: &SymmetricMatrix, b: &SymmetricMatrix, modes: usize) -> Result<(Vec<f64>, f64)> {
    let classes = parity_classes(modes);
    let mut class_of = vec![0usize; modes * modes];
    for (c, members) in classes.iter().enumerate() {
        for &i in members {
            class_of[i] = c;
        }
    }
    let dim = modes * modes;
    let mut leak = 0.0f64;
    for i in 0..dim {
        for j in i..dim {
            if class_of[i] != class_of[j] {
                leak = leak.max(a.get(i, j).abs());
            }
        }
    }
    let blocks = classes
        .par_iter()
        .filter(|members| !members.is_empty())
        .map(|members| {
            let sub_a = a.principal_submatrix(members);
            let sub_b = b.principal_submatrix(members);
            sym_gen_eigs(&sub_a, &sub_b, members.len())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut values: Vec<f64> = blocks.into_iter().flatten().collect();
    values.sort_by(f64::total_cmp);
    Ok((values, leak))
}

/// The `count` smallest Ritz values; each bounds `lambda_k(a)` from above.
pub fn ritz_eigs(spec: &RitzBasisSpec, count: usize) -> Result<RitzSolution> {
    if count == 0 || count > spec.max_count() {
        return Err(Error::InvalidInput(format!(
            "count {count} outside 1..={} for {} modes per direction",
            spec.max_count(),
            spec.modes
        )));
    }
    let (a, b) = assemble_ritz(spec)?;
    let mass_deviation = mass_deviation(&b);
    let (mut values, parity_leak) = solve_pencil(&a, &b, spec.modes)?;
    values.truncate(count);
    Ok(RitzSolution {
        spec: *spec,
        eigenvalues: values,
        mass_deviation,
        parity_leak,
    })
}

fn mass_deviation(b: &SymmetricMatrix) -> f64 {
    let n = b.dim();
    let mut dev = 0.0f64;
    for i in 0..n {
        for j in i..n {
            dev = dev.max((b.get(i, j) - if i == j { 1.0 } else { 0.0 }).abs());
        }
    }
    dev
}

/// Ritz upper bound for `lambda_1(a)` at each grid point (grid within `[1, 2]`).
pub fn lambda1_curve(grid: &[RectAspect], modes: usize) -> Result<Vec<(f64, f64)>> {
    if let Some(bad) = grid.iter().find(|a| a.value() > 2.0) {
        return Err(Error::InvalidInput(format!(
            "curve grid entry {} outside [1, 2]",
            bad.value()
        )));
    }
    grid.par_iter()
        .map(|&a| {
            let sol = ritz_eigs(&RitzBasisSpec::new(a, modes)?, 1)?;
            Ok((a.value(), sol.eigenvalues[0]))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beam::first_mode_slope_energy;
    use crate::numerics::linalg::sym_gen_eigs;
    use crate::{WIENER_LOWER, WIENER_UPPER};

    fn spec(a: f64, m: usize) -> RitzBasisSpec {
        RitzBasisSpec::new(RectAspect::new(a).unwrap(), m).unwrap()
    }

    #[test]
    fn single_mode_entry() {
        let (a, b) = assemble_ritz(&spec(1.0, 1)).unwrap();
        let w4 = crate::beam::rho_zero();
        let k1 = first_mode_slope_energy();
        let expected = 2.0 * w4 + 2.0 * k1 * k1;
        assert!((a.get(0, 0) - expected).abs() < 1e-8 * expected, "{} vs {expected}", a.get(0, 0));
        assert!((b.get(0, 0) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn coupling_is_minus_slope_energy() {
        let ints = BeamIntegrals::compute(6, 20).unwrap();
        assert!((ints.coupling[0] + first_mode_slope_energy()).abs() < 1e-9);
        for i in 0..6 {
            for j in 0..6 {
                let c = ints.coupling[i * 6 + j];
                assert!((c - ints.coupling[j * 6 + i]).abs() < 1e-8 * c.abs().max(1.0));
                if (i + j) % 2 == 1 {
                    assert!(c.abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn mass_near_identity_all_sizes() {
        for m in [2, 8, 16, 24, 32, 40] {
            let (_, b) = assemble_ritz(&spec(1.3, m)).unwrap();
            assert!(mass_deviation(&b) <= MASS_TOLERANCE, "M={m}");
        }
    }

    #[test]
    fn spec_validation() {
        assert!(RitzBasisSpec::new(RectAspect::SQUARE, 0).is_err());
        assert!(RitzBasisSpec::new(RectAspect::SQUARE, 41).is_err());
        assert!(ritz_eigs(&spec(1.0, 4), 9).is_err());
        assert!(ritz_eigs(&spec(1.0, 4), 0).is_err());
        assert!(lambda1_curve(&[RectAspect::new(2.5).unwrap()], 4).is_err());
    }

    #[test]
    fn square_value_in_wiener_window() {
        let sol = ritz_eigs(&spec(1.0, 8), 1).unwrap();
        let v = sol.eigenvalues[0];
        assert!((WIENER_LOWER..=1320.0).contains(&v), "{v}");
        assert!(sol.parity_leak < 1e-6);
    }

    #[test]
    fn monotone_in_basis_size() {
        let mut prev = f64::INFINITY;
        for m in [4, 8, 16] {
            let v = ritz_eigs(&spec(1.0, m), 1).unwrap().eigenvalues[0];
            assert!(v <= prev * (1.0 + 1e-12), "M={m}: {v} > {prev}");
            prev = v;
        }
        assert!(prev <= WIENER_UPPER * 1.005);
    }

    #[test]
    fn blocked_solve_matches_full_pencil() {
        let s = spec(1.17, 6);
        let (a, b) = assemble_ritz(&s).unwrap();
        let full = sym_gen_eigs(&a, &b, 18).unwrap();
        let blocked = ritz_eigs(&s, 18).unwrap().eigenvalues;
        for (x, y) in full.iter().zip(&blocked) {
            assert!((x - y).abs() <= 1e-9 * x, "{x} vs {y}");
        }
    }

    #[test]
    fn reciprocal_aspect_same_spectrum() {
        for a in [1.05, 1.5] {
            let (a1, b1) = assemble_scaled(a, 6, 20).unwrap();
            let (a2, b2) = assemble_scaled(1.0 / a, 6, 20).unwrap();
            let e1 = solve_pencil(&a1, &b1, 6).unwrap().0;
            let e2 = solve_pencil(&a2, &b2, 6).unwrap().0;
            for (x, y) in e1.iter().zip(&e2).take(18) {
                assert!((x - y).abs() <= 1e-9 * x);
            }
        }
    }

    #[test]
    fn gram_matrices_symmetric_definite() {
        let (a, b) = assemble_ritz(&spec(1.4, 5)).unwrap();
        // packed storage is symmetric by construction; check definiteness
        assert!(crate::numerics::linalg::cholesky(&a).is_ok());
        assert!(crate::numerics::linalg::cholesky(&b).is_ok());
    }

    #[test]
    fn curve_has_owen_below() {
        let grid: Vec<_> = [1.0, 1.02, 1.1, 2.0]
            .iter()
            .map(|&a| RectAspect::new(a).unwrap())
            .collect();
        let curve = lambda1_curve(&grid, 8).unwrap();
        for (a, v) in curve {
            let l = crate::bounds::owen_bound(RectAspect::new(a).unwrap(), 1e-9).unwrap();
            assert!(l <= v, "a={a}: L={l} ritz={v}");
        }
    }
}
