use std::fmt::Write;

use clamped_plate::aspect::aspect_grid;
use clamped_plate::beam::{rho_determinant, rho_fd_oracle};
use clamped_plate::bounds::{bounds_table, bracket_optimal_aspect};
use clamped_plate::ritz::{ritz_eigs, RitzBasisSpec};
use clamped_plate::spectra::{
    minimiser_scan, navier_kth, weyl_leading, weyl_two_term, ScanKind, WeylParams,
    MAX_RITZ_SCAN_INDEX,
};
use clamped_plate::{RectAspect, WIENER_UPPER};
use serde::Serialize;

use crate::format::sig12;
use crate::svg::line_plot;
use crate::CliError;

pub const DEFAULT_RHO_TOL: f64 = 1e-10;
pub const DEFAULT_ORACLE_GRIDPOINTS: usize = 256;
pub const DEFAULT_TABLE_GRID: &str = "1:1.1:0.01";
pub const DEFAULT_TABLE_MODES: usize = 12;
pub const DEFAULT_SCAN_GRID: &str = "1:2:0.001";
pub const DEFAULT_SCAN_MODES: usize = 12;
pub const DEFAULT_WEYL_MODES: usize = 24;
/// Reported side ratio of the optimal rectangle, for comparison.
pub const REFERENCE_SIDE_RATIO: f64 = 1.066459;

/// Parses `START:STOP:STEP` into aspect ratios.
pub fn parse_grid(spec: &str) -> Result<Vec<RectAspect>, CliError> {
    let parts: Vec<&str> = spec.split(':').map(str::trim).collect();
    let [start, stop, step] = parts[..] else {
        return Err(CliError::Usage(format!(
            "grid {spec:?} must have the form START:STOP:STEP"
        )));
    };
    let num = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| CliError::Usage(format!("grid {spec:?}: {s:?} is not a number")))
    };
    Ok(aspect_grid(num(start)?, num(stop)?, num(step)?)?)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain structs serialize");
    s.push('\n');
    s
}

#[derive(Debug, Serialize)]
struct RhoOutput {
    alpha: f64,
    rho: f64,
    enclosure_lo: f64,
    enclosure_hi: f64,
    method: &'static str,
    residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_rho: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_halfwidth: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    discrepancy: Option<f64>,
}

pub fn rho(alpha: f64, tol: f64, oracle: Option<usize>) -> Result<String, CliError> {
    let r = rho_determinant(alpha, tol)?;
    let fd = oracle.map(|n| rho_fd_oracle(alpha, n)).transpose()?;
    Ok(to_json(&RhoOutput {
        alpha: r.alpha,
        rho: r.rho,
        enclosure_lo: r.enclosure.lo,
        enclosure_hi: r.enclosure.hi,
        method: r.method.name(),
        residual: r.residual,
        oracle_rho: fd.as_ref().map(|f| f.rho),
        oracle_halfwidth: fd.as_ref().map(|f| f.enclosure.width() / 2.0),
        discrepancy: fd.as_ref().map(|f| (f.rho - r.rho).abs()),
    }))
}

#[derive(Debug, Serialize)]
struct OwenOutput {
    lambda: f64,
    tol: f64,
    a_lo: f64,
    a_hi: f64,
    q_lo: f64,
    q_hi: f64,
    q_hat: f64,
    reference_q: f64,
    comparison: String,
}

pub fn owen_bracket(lambda: f64, tol: f64) -> Result<String, CliError> {
    let bracket = bracket_optimal_aspect(lambda, tol)?;
    let q_hat = bracket.midpoint().powi(2);
    let diff = q_hat - REFERENCE_SIDE_RATIO;
    let comparison = format!(
        "q_hat = {q_hat:.6} vs reference {REFERENCE_SIDE_RATIO}: difference {diff:+.1e}"
    );
    Ok(to_json(&OwenOutput {
        lambda,
        tol,
        a_lo: bracket.lo,
        a_hi: bracket.hi,
        q_lo: bracket.lo.powi(2),
        q_hi: bracket.hi.powi(2),
        q_hat,
        reference_q: REFERENCE_SIDE_RATIO,
        comparison,
    }))
}

/// Default Rayleigh level for the optimal-aspect inversion.
pub const DEFAULT_OWEN_LAMBDA: f64 = WIENER_UPPER;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

impl std::str::FromStr for TableFormat {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            _ => Err(CliError::Usage(format!("unknown format {s:?} (use csv or json)"))),
        }
    }
}

#[derive(Debug, Serialize)]
struct TableRow {
    a: f64,
    owen: f64,
    simple: f64,
    liyau_k1: f64,
    ritz_upper: Option<f64>,
}

/// Bound comparison table; `modes == 0` leaves the Ritz column empty.
pub fn bounds(grid: &str, modes: usize, format: TableFormat) -> Result<String, CliError> {
    let grid = parse_grid(grid)?;
    let rows = bounds_table(&grid, (modes > 0).then_some(modes))?;
    Ok(match format {
        TableFormat::Csv => {
            let mut out = String::from("a,owen,simple,liyau_k1,ritz_upper\n");
            for r in &rows {
                let ritz = r.ritz_upper.map(sig12).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    sig12(r.a.value()),
                    sig12(r.owen),
                    sig12(r.simple),
                    sig12(r.liyau_k1),
                    ritz
                );
            }
            out
        }
        TableFormat::Json => {
            let rows: Vec<TableRow> = rows
                .iter()
                .map(|r| TableRow {
                    a: r.a.value(),
                    owen: r.owen,
                    simple: r.simple,
                    liyau_k1: r.liyau_k1,
                    ritz_upper: r.ritz_upper,
                })
                .collect();
            to_json(&rows)
        }
    })
}

pub fn parse_scan_kind(kind: &str, modes: usize) -> Result<ScanKind, CliError> {
    match kind {
        "navier" => Ok(ScanKind::Navier),
        "clamped-ritz" => Ok(ScanKind::ClampedRitz { modes }),
        _ => Err(CliError::Usage(format!(
            "unknown scan kind {kind:?} (use navier or clamped-ritz)"
        ))),
    }
}

#[derive(Debug, Serialize)]
struct ScanOutput {
    k: usize,
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    modes: Option<usize>,
    points: usize,
    a_star: f64,
    q_star: f64,
    lambda_star: f64,
}

pub struct ScanReport {
    pub json: String,
    pub svg: String,
}

pub fn scan(k: usize, kind: ScanKind, grid: &str) -> Result<ScanReport, CliError> {
    let grid = parse_grid(grid)?;
    let result = minimiser_scan(k, kind, &grid)?;
    let (name, modes) = match kind {
        ScanKind::Navier => ("navier", None),
        ScanKind::ClampedRitz { modes } => ("clamped-ritz", Some(modes)),
    };
    let json = to_json(&ScanOutput {
        k,
        kind: name,
        modes,
        points: grid.len(),
        a_star: result.argmin.value(),
        q_star: result.side_ratio(),
        lambda_star: result.min_value,
    });
    let points: Vec<(f64, f64)> = grid
        .iter()
        .zip(&result.values)
        .map(|(a, &v)| (a.value(), v))
        .collect();
    let svg = line_plot(
        &format!("lambda_{k}(a), {name}"),
        &points,
        Some((result.argmin.value(), result.min_value)),
    );
    Ok(ScanReport { json, svg })
}

#[derive(Debug, Serialize)]
struct WeylOutput {
    k: usize,
    a: f64,
    perimeter: f64,
    gamma_ratio: f64,
    weyl_leading: f64,
    weyl_two_term: f64,
    weyl_two_term_sqrt: f64,
    navier: f64,
    navier_over_two_term: f64,
    ritz: Option<f64>,
    ritz_over_two_term: Option<f64>,
}

/// Two-term asymptotics next to the exact Navier value and, for small `k`,
/// a clamped Ritz upper bound.
pub fn weyl(k: usize, a: f64, modes: usize) -> Result<String, CliError> {
    if k == 0 {
        return Err(CliError::Usage("k must be >= 1".into()));
    }
    let a = RectAspect::canonical(a)?;
    let params = WeylParams::rectangle(a);
    let (two_term, two_term_sqrt) = weyl_two_term(k, &params);
    let navier = navier_kth(a, k)?;
    let ritz = if k <= MAX_RITZ_SCAN_INDEX {
        Some(ritz_eigs(&RitzBasisSpec::new(a, modes)?, k)?.eigenvalues[k - 1])
    } else {
        None
    };
    Ok(to_json(&WeylOutput {
        k,
        a: a.value(),
        perimeter: params.perimeter,
        gamma_ratio: params.gamma_ratio,
        weyl_leading: weyl_leading(k, params.area),
        weyl_two_term: two_term,
        weyl_two_term_sqrt: two_term_sqrt,
        navier,
        navier_over_two_term: navier / two_term,
        ritz,
        ritz_over_two_term: ritz.map(|r| r / two_term),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("1:1.1:0.01").unwrap().len(), 11);
        assert_eq!(parse_grid(" 1 : 2 : 0.5 ").unwrap().len(), 3);
        for bad in ["", "1:2", "1:2:0", "2:1:0.1", "a:2:0.1", "0.5:1:0.1", "1:2:0.1:4"] {
            assert!(parse_grid(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn table_csv_shape() {
        let csv = bounds("1:1.02:0.01", 4, TableFormat::Csv).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "a,owen,simple,liyau_k1,ritz_upper");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("1.00000000000,"));
        assert!(!csv.contains('\r'));
        for line in &lines[1..] {
            assert_eq!(line.split(',').count(), 5);
        }
        let no_ritz = bounds("1:1:0.1", 0, TableFormat::Csv).unwrap();
        assert!(no_ritz.lines().nth(1).unwrap().ends_with(','));
    }

    #[test]
    fn rho_json_fields() {
        let out = rho(1.0, 1e-10, None).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        for key in ["alpha", "rho", "enclosure_lo", "enclosure_hi", "method", "residual"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["method"], "determinant");
        assert!(v.get("oracle_rho").is_none());
    }

    #[test]
    fn weyl_ritz_only_for_small_k() {
        let v: serde_json::Value = serde_json::from_str(&weyl(60, 1.0, 4).unwrap()).unwrap();
        assert!(v["ritz"].is_null());
        let v: serde_json::Value = serde_json::from_str(&weyl(3, 1.0, 6).unwrap()).unwrap();
        assert!(v["ritz"].as_f64().unwrap() > v["navier"].as_f64().unwrap());
    }
}
