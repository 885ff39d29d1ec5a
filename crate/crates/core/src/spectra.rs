//! Exact Dirichlet-Laplacian and Navier spectra of `R_a`, Weyl asymptotics
//! and minimiser scans over the aspect ratio.
//!
//! The Dirichlet Laplacian on `[0, a] x [0, 1/a]` has eigenvalues
//! `pi^2 (m^2 / a^2 + n^2 a^2)` for `m, n >= 1`; the Navier (hinged) plate
//! eigenvalues are their squares, in the same order.

use std::cmp::Ordering;
use std::f64::consts::PI;

use rayon::prelude::*;

use crate::aspect::RectAspect;
use crate::error::{Error, Result};
use crate::ritz::{ritz_eigs, RitzBasisSpec};

/// Largest eigenvalue index accepted by the lattice enumeration.
pub const MAX_INDEX: usize = 100_000_000;
/// Largest aspect accepted by the lattice enumeration.
pub const MAX_ASPECT: f64 = 50.0;

/// `1 + Gamma(3/4) / (sqrt(pi) Gamma(5/4))`, the boundary coefficient factor
/// of the clamped-plate Weyl law.
pub const GAMMA_RATIO: f64 = 1.762_759_763_502;

/// `4 sqrt(2 pi) / (3 sqrt(3))`.
pub fn lemma41_coefficient() -> f64 {
    4.0 * (2.0 * PI).sqrt() / (3.0 * 3f64.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpectrumKind {
    DirichletLaplacian,
    Navier,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEntry {
    pub value: f64,
    pub m: u32,
    pub n: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    pub a: RectAspect,
    pub kind: SpectrumKind,
    /// The `k` smallest eigenvalues, ascending, ties by `(m, n)`.
    pub entries: Vec<SpectrumEntry>,
}

impl SpectrumTable {
    pub fn count(&self) -> usize {
        self.entries.len()
    }

    /// Value of the last (k-th) entry.
    pub fn kth(&self) -> f64 {
        self.entries.last().map_or(f64::NAN, |e| e.value)
    }

    pub fn values(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.value).collect()
    }
}

/// `pi^2 (m^2 / a^2 + n^2 a^2)`.
pub fn laplacian_value(a: f64, m: u32, n: u32) -> f64 {
    let (m, n) = (m as f64, n as f64);
    PI * PI * (m * m / (a * a) + n * n * a * a)
}

fn entry_order(x: &SpectrumEntry, y: &SpectrumEntry) -> Ordering {
    x.value
        .total_cmp(&y.value)
        .then(x.m.cmp(&y.m))
        .then(x.n.cmp(&y.n))
}

fn check_request(a: RectAspect, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be >= 1".into()));
    }
    if k > MAX_INDEX {
        return Err(Error::Overflow(k));
    }
    if a.value() > MAX_ASPECT {
        return Err(Error::InvalidInput(format!(
            "aspect a = {} exceeds {MAX_ASPECT}",
            a.value()
        )));
    }
    Ok(())
}

/// All lattice entries with value `<= cap`.
fn lattice_below(a: f64, cap: f64) -> Vec<SpectrumEntry> {
    let mut out = Vec::new();
    let mut n = 1u32;
    loop {
        let ny = n as f64 * a;
        let rest = cap / (PI * PI) - ny * ny;
        if rest < 1.0 / (a * a) {
            break;
        }
        // one past the real-valued bound; the filter below is authoritative
        let m_max = (a * rest.sqrt()).floor() as u32 + 1;
        for m in 1..=m_max {
            let value = laplacian_value(a, m, n);
            if value <= cap {
                out.push(SpectrumEntry { value, m, n });
            }
        }
        n += 1;
    }
    out
}

/// Lattice entries guaranteed to contain the `k` smallest: the cap grows
/// geometrically until at least `k` values lie below it.
fn enumerate_at_least(a: f64, k: usize) -> Vec<SpectrumEntry> {
    // leading Weyl term 4 pi k plus a perimeter allowance
    let mut cap = 4.0 * PI * k as f64 + 2.0 * PI * PI * (a * a + 1.0 / (a * a)) + 10.0;
    loop {
        let entries = lattice_below(a, cap);
        if entries.len() >= k {
            return entries;
        }
        cap *= 1.5;
    }
}

/// The `k` smallest Dirichlet-Laplacian eigenvalues of `R_a` with their
/// lattice indices.
pub fn laplacian_spectrum(a: RectAspect, k: usize) -> Result<SpectrumTable> {
    check_request(a, k)?;
    let mut entries = enumerate_at_least(a.value(), k);
    if k < entries.len() {
        entries.select_nth_unstable_by(k - 1, entry_order);
        entries.truncate(k);
    }
    entries.sort_by(entry_order);
    Ok(SpectrumTable {
        a,
        kind: SpectrumKind::DirichletLaplacian,
        entries,
    })
}

/// The `k` smallest Navier eigenvalues of `R_a` (squared Laplacian values).
pub fn navier_spectrum(a: RectAspect, k: usize) -> Result<SpectrumTable> {
    let mut table = laplacian_spectrum(a, k)?;
    for e in &mut table.entries {
        e.value *= e.value;
    }
    table.kind = SpectrumKind::Navier;
    Ok(table)
}

/// The `k`-th Dirichlet-Laplacian eigenvalue alone.
pub fn laplacian_kth(a: RectAspect, k: usize) -> Result<f64> {
    check_request(a, k)?;
    let mut values: Vec<f64> = enumerate_at_least(a.value(), k)
        .into_iter()
        .map(|e| e.value)
        .collect();
    let (_, kth, _) = values.select_nth_unstable_by(k - 1, f64::total_cmp);
    Ok(*kth)
}

/// The `k`-th Navier eigenvalue alone.
pub fn navier_kth(a: RectAspect, k: usize) -> Result<f64> {
    Ok(laplacian_kth(a, k)?.powi(2))
}

/// `(lambda_k^(1/2), 4 pi k + 2 a lambda_k^(1/4) - c a^(3/2) lambda_k^(1/8))`
/// with `c = 4 sqrt(2 pi) / (3 sqrt 3)`; the first should dominate for any
/// clamped eigenvalue (or upper bound) of `R_a`.
pub fn lemma41_lhs_rhs(a: RectAspect, k: usize, lambda_k: f64) -> Result<(f64, f64)> {
    if !(lambda_k > 0.0) {
        return Err(Error::NonPositive(lambda_k));
    }
    let a = a.value();
    let lhs = lambda_k.sqrt();
    let rhs = 4.0 * PI * k as f64 + 2.0 * a * lambda_k.powf(0.25)
        - lemma41_coefficient() * a.powf(1.5) * lambda_k.powf(0.125);
    Ok((lhs, rhs))
}

/// Geometric data entering the two-term Weyl law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylParams {
    pub area: f64,
    pub perimeter: f64,
    pub gamma_ratio: f64,
}

impl WeylParams {
    pub fn new(area: f64, perimeter: f64) -> Result<Self> {
        if !(area > 0.0) {
            return Err(Error::NonPositive(area));
        }
        if !(perimeter > 0.0) {
            return Err(Error::NonPositive(perimeter));
        }
        Ok(WeylParams {
            area,
            perimeter,
            gamma_ratio: GAMMA_RATIO,
        })
    }

    pub fn rectangle(a: RectAspect) -> Self {
        WeylParams {
            area: 1.0,
            perimeter: a.perimeter(),
            gamma_ratio: GAMMA_RATIO,
        }
    }
}

/// Two-term Weyl predictions `(lambda_k, lambda_k^(1/2))` for the clamped plate.
pub fn weyl_two_term(k: usize, params: &WeylParams) -> (f64, f64) {
    let k = k as f64;
    let WeylParams {
        area,
        perimeter,
        gamma_ratio,
    } = *params;
    let lambda = 16.0 * PI * PI / (area * area) * k * k
        + 16.0 * PI.powf(1.5) * perimeter / area.powf(2.5) * gamma_ratio * k.powf(1.5);
    let root = 4.0 * PI / area * k + 2.0 * PI.sqrt() * perimeter / area.powf(1.5) * gamma_ratio * k.sqrt();
    (lambda, root)
}

/// Leading Weyl term `16 pi^2 k^2 / |Omega|^2`.
pub fn weyl_leading(k: usize, area: f64) -> f64 {
    16.0 * PI * PI * (k as f64).powi(2) / (area * area)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanKind {
    Navier,
    /// Ritz upper bounds with the given modes per direction.
    ClampedRitz { modes: usize },
}

/// Largest `k` accepted for Ritz-based scans.
pub const MAX_RITZ_SCAN_INDEX: usize = 50;

#[derive(Debug, Clone, PartialEq)]
pub struct MinimiserScan {
    pub k: usize,
    pub grid: Vec<RectAspect>,
    /// `lambda_k` at each grid point.
    pub values: Vec<f64>,
    /// Smallest grid point attaining the minimum.
    pub argmin: RectAspect,
    pub min_value: f64,
}

impl MinimiserScan {
    /// `(a_k*)^2`, ratio of longest to shortest side of the minimiser.
    pub fn side_ratio(&self) -> f64 {
        self.argmin.side_ratio()
    }
}

/// `lambda_k(a)` of the chosen kind at a single aspect.
pub fn scan_value(k: usize, kind: ScanKind, a: RectAspect) -> Result<f64> {
    match kind {
        ScanKind::Navier => navier_kth(a, k),
        ScanKind::ClampedRitz { modes } => {
            let sol = ritz_eigs(&RitzBasisSpec::new(a, modes)?, k)?;
            Ok(sol.eigenvalues[k - 1])
        }
    }
}

/// Exhaustive minimisation of `lambda_k(a)` over `grid`. Points are
/// evaluated in parallel and reduced in grid order.
pub fn minimiser_scan(k: usize, kind: ScanKind, grid: &[RectAspect]) -> Result<MinimiserScan> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if k == 0 {
        return Err(Error::InvalidInput("k must be >= 1".into()));
    }
    if matches!(kind, ScanKind::ClampedRitz { .. }) && k > MAX_RITZ_SCAN_INDEX {
        return Err(Error::InvalidInput(format!(
            "k = {k} exceeds {MAX_RITZ_SCAN_INDEX} for Ritz scans"
        )));
    }
    let values = grid
        .par_iter()
        .map(|&a| scan_value(k, kind, a))
        .collect::<Result<Vec<_>>>()?;
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v < values[best] {
            best = i;
        }
    }
    Ok(MinimiserScan {
        k,
        grid: grid.to_vec(),
        argmin: grid[best],
        min_value: values[best],
        values,
    })
}
