use crate::error::{Error, Result};
use crate::interval::Interval;

/// Plain bisection. Returns an interval of width `<= tol` across which `f`
/// changes sign (or on whose endpoint `f` vanishes).
///
/// Stops early if the bracket can no longer be split in floating point, in
/// which case the returned width is one ulp of the root.
pub fn bisect_root<F>(f: F, bracket: Interval, tol: f64) -> Result<Interval>
where
    F: Fn(f64) -> f64,
{
    try_bisect_root(|x| Ok(f(x)), bracket, tol)
}

/// [`bisect_root`] for functions that can themselves fail.
pub fn try_bisect_root<F>(mut f: F, bracket: Interval, tol: f64) -> Result<Interval>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance {tol} must be positive")));
    }
    let mut eval = |x: f64| -> Result<f64> {
        let y = f(x)?;
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFinite { at: x })
        }
    };

    let (mut lo, mut hi) = (bracket.lo, bracket.hi);
    let f_lo = eval(lo)?;
    let f_hi = eval(hi)?;
    if f_lo == 0.0 {
        return Ok(Interval::point(lo));
    }
    if f_hi == 0.0 {
        return Ok(Interval::point(hi));
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoSignChange { lo, hi });
    }
    let lo_negative = f_lo < 0.0;

    while hi - lo > tol {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = eval(mid)?;
        if f_mid == 0.0 {
            return Ok(Interval::point(mid));
        }
        if (f_mid < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Interval { lo, hi })
}

/// Point `k` of the lattice of multiples of `step`. When `1 / step` is an
/// integer the point is formed as `k / (1 / step)`, the double nearest the
/// decimal value (e.g. `206538 / 200000` is exactly the literal `1.03269`).
pub fn lattice_point(k: i64, step: f64) -> f64 {
    let scale = 1.0 / step;
    if (scale - scale.round()).abs() <= 1e-9 * scale {
        k as f64 / scale.round()
    } else {
        k as f64 * step
    }
}

/// Bisection restricted to the lattice of multiples of `step`. The result is
/// two adjacent lattice points across which `f` changes sign (or a single
/// point where it vanishes), so its endpoints are round numbers at the
/// resolution of `step`.
pub fn try_bisect_on_lattice<F>(mut f: F, bracket: Interval, step: f64) -> Result<Interval>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::InvalidInput(format!("lattice step {step} must be positive")));
    }
    let mut lo = (bracket.lo / step - 1e-9).ceil() as i64;
    let mut hi = (bracket.hi / step + 1e-9).floor() as i64;
    if lo >= hi {
        return Err(Error::InvalidInput(format!(
            "bracket {bracket} holds fewer than two lattice points of step {step}"
        )));
    }
    let mut eval = |k: i64| -> Result<f64> {
        let x = lattice_point(k, step);
        let y = f(x)?;
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFinite { at: x })
        }
    };
    let f_lo = eval(lo)?;
    let f_hi = eval(hi)?;
    if f_lo == 0.0 {
        return Ok(Interval::point(lattice_point(lo, step)));
    }
    if f_hi == 0.0 {
        return Ok(Interval::point(lattice_point(hi, step)));
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoSignChange {
            lo: lattice_point(lo, step),
            hi: lattice_point(hi, step),
        });
    }
    let lo_negative = f_lo < 0.0;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let f_mid = eval(mid)?;
        if f_mid == 0.0 {
            return Ok(Interval::point(lattice_point(mid, step)));
        }
        if (f_mid < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Interval {
        lo: lattice_point(lo, step),
        hi: lattice_point(hi, step),
    })
}
