//! Dense symmetric eigenvalue problems by cyclic Jacobi rotation.

use crate::error::{Error, Result};

/// Real symmetric matrix stored as its packed upper triangle (row by row).
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    packed: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        SymmetricMatrix {
            n,
            packed: vec![0.0; n * (n + 1) / 2],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// Builds the matrix from `f(i, j)` evaluated on the upper triangle only.
    pub fn from_fn<F: FnMut(usize, usize) -> f64>(n: usize, mut f: F) -> Self {
        let mut packed = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in i..n {
                packed.push(f(i, j));
            }
        }
        SymmetricMatrix { n, packed }
    }

    /// Reads the upper triangle of a dense row-major matrix.
    pub fn from_dense(n: usize, dense: &[f64]) -> Result<Self> {
        if dense.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: dense.len(),
            });
        }
        Ok(Self::from_fn(n, |i, j| dense[i * n + j]))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn index(&self, i: usize, j: usize) -> usize {
        let (r, c) = if i <= j { (i, j) } else { (j, i) };
        // rows 0..r hold n + (n-1) + ... + (n-r+1) entries
        r * self.n - r * (r.saturating_sub(1)) / 2 + (c - r)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.packed[self.index(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        let k = self.index(i, j);
        self.packed[k] = value;
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.n;
        let mut d = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = self.get(i, j);
                d[i * n + j] = v;
                d[j * n + i] = v;
            }
        }
        d
    }

    /// Principal submatrix on the given row/column indices.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Self {
        Self::from_fn(indices.len(), |i, j| self.get(indices[i], indices[j]))
    }

    pub fn max_abs(&self) -> f64 {
        self.packed.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in i..self.n {
                let v = self.get(i, j);
                s += if i == j { v * v } else { 2.0 * v * v };
            }
        }
        s.sqrt()
    }

    /// `y = A x`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut y = vec![0.0; n];
        for i in 0..n {
            for j in 0..n {
                y[i] += self.get(i, j) * x[j];
            }
        }
        y
    }
}

/// Eigenvalues (ascending) and matching unit eigenvectors.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    /// `vectors[k]` is the eigenvector of `values[k]`.
    pub vectors: Vec<Vec<f64>>,
}

const MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi on a dense row-major copy. A rotation is skipped once
/// `|a_pq| <= eps * sqrt(|a_pp a_qq|)`, which keeps small eigenvalues of
/// graded matrices accurate relative to themselves.
fn jacobi(n: usize, a: &mut [f64], mut v: Option<&mut [f64]>) {
    let eps = f64::EPSILON;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                if apq.abs() <= eps * (app * aqq).abs().sqrt() {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                rotated = true;
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.is_infinite() {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let new_p = c * akp - s * akq;
                    let new_q = s * akp + c * akq;
                    a[k * n + p] = new_p;
                    a[p * n + k] = new_p;
                    a[k * n + q] = new_q;
                    a[q * n + k] = new_q;
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                if let Some(v) = v.as_deref_mut() {
                    // columns of v are eigenvectors
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
}

fn check_count(n: usize, count: usize) -> Result<()> {
    if count > n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: count,
        });
    }
    Ok(())
}

/// The `count` smallest eigenvalues of `a`, ascending.
pub fn sym_eigs(a: &SymmetricMatrix, count: usize) -> Result<Vec<f64>> {
    let n = a.dim();
    check_count(n, count)?;
    let mut dense = a.to_dense();
    jacobi(n, &mut dense, None);
    let mut values: Vec<f64> = (0..n).map(|i| dense[i * n + i]).collect();
    values.sort_by(f64::total_cmp);
    values.truncate(count);
    Ok(values)
}

/// The `count` smallest eigenpairs of `a`.
pub fn sym_eigen(a: &SymmetricMatrix, count: usize) -> Result<EigenDecomposition> {
    let n = a.dim();
    check_count(n, count)?;
    let mut dense = a.to_dense();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    jacobi(n, &mut dense, Some(&mut v));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| dense[i * n + i].total_cmp(&dense[j * n + j]).then(i.cmp(&j)));
    order.truncate(count);
    let values = order.iter().map(|&i| dense[i * n + i]).collect();
    let vectors = order
        .iter()
        .map(|&col| (0..n).map(|k| v[k * n + col]).collect())
        .collect();
    Ok(EigenDecomposition { values, vectors })
}

/// Lower Cholesky factor of `b` as a dense row-major matrix.
pub fn cholesky(b: &SymmetricMatrix) -> Result<Vec<f64>> {
    let n = b.dim();
    let mut l = vec![0.0; n * n];
    for j in 0..n {
        let mut d = b.get(j, j);
        for k in 0..j {
            d -= l[j * n + k] * l[j * n + k];
        }
        if !(d > 0.0) {
            return Err(Error::NotPositiveDefinite { row: j, pivot: d });
        }
        let djj = d.sqrt();
        l[j * n + j] = djj;
        for i in (j + 1)..n {
            let mut s = b.get(i, j);
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            l[i * n + j] = s / djj;
        }
    }
    Ok(l)
}

/// Reduces the pencil `(a, b)` to the standard symmetric matrix `L^-1 a L^-T`.
pub fn reduce_pencil(a: &SymmetricMatrix, b: &SymmetricMatrix) -> Result<SymmetricMatrix> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: b.dim(),
        });
    }
    let l = cholesky(b)?;
    // X = L^-1 A, column by column (forward substitution)
    let dense = a.to_dense();
    let mut x = vec![0.0; n * n];
    for col in 0..n {
        for i in 0..n {
            let mut s = dense[i * n + col];
            for k in 0..i {
                s -= l[i * n + k] * x[k * n + col];
            }
            x[i * n + col] = s / l[i * n + i];
        }
    }
    // C = X L^-T, i.e. L C^T = X^T; C is symmetric so solve for rows of C
    let mut c = vec![0.0; n * n];
    for row in 0..n {
        for i in 0..n {
            let mut s = x[row * n + i];
            for k in 0..i {
                s -= l[i * n + k] * c[row * n + k];
            }
            c[row * n + i] = s / l[i * n + i];
        }
    }
    Ok(SymmetricMatrix::from_fn(n, |i, j| {
        0.5 * (c[i * n + j] + c[j * n + i])
    }))
}

/// The `count` smallest eigenvalues of `a x = lambda b x`, ascending, by
/// Cholesky reduction of `b`.
pub fn sym_gen_eigs(a: &SymmetricMatrix, b: &SymmetricMatrix, count: usize) -> Result<Vec<f64>> {
    check_count(a.dim(), count)?;
    let c = reduce_pencil(a, b)?;
    sym_eigs(&c, count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn tridiag(n: usize) -> SymmetricMatrix {
        SymmetricMatrix::from_fn(n, |i, j| match j - i {
            0 => 2.0,
            1 => -1.0,
            _ => 0.0,
        })
    }

    #[test]
    fn packed_indexing() {
        let m = SymmetricMatrix::from_fn(4, |i, j| (10 * i + j) as f64);
        assert_eq!(m.get(2, 3), 23.0);
        assert_eq!(m.get(3, 2), 23.0);
        assert_eq!(m.get(3, 3), 33.0);
        assert_eq!(m.get(0, 0), 0.0);
        let d = m.to_dense();
        assert_eq!(SymmetricMatrix::from_dense(4, &d).unwrap(), m);
    }

    #[test]
    fn diagonal_and_two_by_two() {
        let d = SymmetricMatrix::from_diagonal(&[3.0, 1.0, 2.0]);
        assert_eq!(sym_eigs(&d, 3).unwrap(), vec![1.0, 2.0, 3.0]);
        let m = SymmetricMatrix::from_fn(2, |i, j| if i == j { 2.0 } else { 1.0 });
        let e = sym_eigs(&m, 2).unwrap();
        assert!((e[0] - 1.0).abs() < 1e-14 && (e[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn tridiagonal_closed_form() {
        let e = sym_eigs(&tridiag(10), 1).unwrap();
        let exact = 4.0 * (PI / 22.0).sin().powi(2);
        assert!((e[0] - exact).abs() < 1e-10);
        let all = sym_eigs(&tridiag(10), 10).unwrap();
        for (k, v) in all.iter().enumerate() {
            let exact = 4.0 * ((k + 1) as f64 * PI / 22.0).sin().powi(2);
            assert!((v - exact).abs() < 1e-13);
        }
    }

    #[test]
    fn count_too_large() {
        assert!(matches!(
            sym_eigs(&tridiag(3), 4),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            sym_gen_eigs(&tridiag(3), &SymmetricMatrix::identity(2), 1),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn diagonal_pencil() {
        let a = SymmetricMatrix::from_diagonal(&[2.0, 6.0]);
        let b = SymmetricMatrix::from_diagonal(&[1.0, 2.0]);
        let e = sym_gen_eigs(&a, &b, 2).unwrap();
        assert!((e[0] - 2.0).abs() < 1e-15 && (e[1] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn indefinite_mass_rejected() {
        let a = SymmetricMatrix::identity(2);
        let b = SymmetricMatrix::from_diagonal(&[1.0, -1.0]);
        assert!(matches!(
            sym_gen_eigs(&a, &b, 1),
            Err(Error::NotPositiveDefinite { row: 1, .. })
        ));
    }

    #[test]
    fn eigenpair_residuals() {
        let a = SymmetricMatrix::from_fn(30, |i, j| 1.0 / (1.0 + i as f64 + j as f64) + if i == j { 2.0 } else { 0.0 });
        let dec = sym_eigen(&a, 30).unwrap();
        let norm = a.frobenius_norm();
        for (lambda, v) in dec.values.iter().zip(&dec.vectors) {
            let av = a.mul_vec(v);
            let r: f64 = av
                .iter()
                .zip(v)
                .map(|(x, y)| (x - lambda * y).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(r <= 1e-9 * norm, "residual {r}");
            let len: f64 = v.iter().map(|x| x * x).sum();
            assert!((len - 1.0).abs() < 1e-12);
        }
        assert!(dec.values.windows(2).all(|w| w[0] <= w[1]));
    }

    /// Random orthogonal matrix as a product of Householder reflections.
    fn orthogonal(n: usize, seeds: &[f64]) -> Vec<f64> {
        let mut q = vec![0.0; n * n];
        for i in 0..n {
            q[i * n + i] = 1.0;
        }
        for r in 0..n.min(seeds.len() / n) {
            let u: Vec<f64> = seeds[r * n..(r + 1) * n].to_vec();
            let norm2: f64 = u.iter().map(|x| x * x).sum();
            if norm2 < 1e-6 {
                continue;
            }
            // Q <- Q (I - 2 u u^T / |u|^2)
            for row in 0..n {
                let dot: f64 = (0..n).map(|k| q[row * n + k] * u[k]).sum();
                for k in 0..n {
                    q[row * n + k] -= 2.0 * dot * u[k] / norm2;
                }
            }
        }
        q
    }

    proptest! {
        #[test]
        fn similarity_invariance(
            n in 2usize..=12,
            entries in proptest::collection::vec(-5.0f64..5.0, 144),
            seeds in proptest::collection::vec(-1.0f64..1.0, 144),
        ) {
            let a = SymmetricMatrix::from_fn(n, |i, j| entries[i * 12 + j]);
            let q = orthogonal(n, &seeds);
            let dense = a.to_dense();
            // Q^T A Q
            let mut aq = vec![0.0; n * n];
            for i in 0..n {
                for j in 0..n {
                    aq[i * n + j] = (0..n).map(|k| dense[i * n + k] * q[k * n + j]).sum();
                }
            }
            let rotated = SymmetricMatrix::from_fn(n, |i, j| {
                (0..n).map(|k| q[k * n + i] * aq[k * n + j]).sum()
            });
            let e1 = sym_eigs(&a, n).unwrap();
            let e2 = sym_eigs(&rotated, n).unwrap();
            let scale = a.frobenius_norm().max(1.0);
            prop_assert!(e1.windows(2).all(|w| w[0] <= w[1]));
            for (x, y) in e1.iter().zip(&e2) {
                prop_assert!((x - y).abs() <= 1e-9 * scale, "{} vs {}", x, y);
            }
        }

        #[test]
        fn identity_mass_matches_standard(
            n in 1usize..=10,
            entries in proptest::collection::vec(-3.0f64..3.0, 100),
        ) {
            // M M^T + n I is SPD
            let a = SymmetricMatrix::from_fn(n, |i, j| {
                let dot: f64 = (0..n).map(|k| entries[i * 10 + k] * entries[j * 10 + k]).sum();
                dot + if i == j { n as f64 } else { 0.0 }
            });
            let e1 = sym_eigs(&a, n).unwrap();
            let e2 = sym_gen_eigs(&a, &SymmetricMatrix::identity(n), n).unwrap();
            for (x, y) in e1.iter().zip(&e2) {
                prop_assert!((x - y).abs() <= 1e-10 * x.abs().max(1.0));
            }
        }
    }
}
