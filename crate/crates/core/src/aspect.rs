use crate::error::{Error, Result};
use crate::numerics::lattice_point;

/// Aspect parameter `a >= 1` of the unit-area rectangle `[0, a] x [0, 1/a]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct RectAspect(f64);

impl RectAspect {
    pub const SQUARE: RectAspect = RectAspect(1.0);

    pub fn new(a: f64) -> Result<Self> {
        if !a.is_finite() || a < 1.0 {
            return Err(Error::InvalidInput(format!("aspect a = {a} must be finite and >= 1")));
        }
        Ok(RectAspect(a))
    }

    /// Maps any positive aspect onto `a >= 1`; `R_a` and `R_{1/a}` are congruent.
    pub fn canonical(a: f64) -> Result<Self> {
        if !a.is_finite() || a <= 0.0 {
            return Err(Error::InvalidInput(format!("aspect a = {a} must be finite and positive")));
        }
        Self::new(if a < 1.0 { 1.0 / a } else { a })
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Longest over shortest side, `a^2`.
    pub fn side_ratio(self) -> f64 {
        self.0 * self.0
    }

    pub fn perimeter(self) -> f64 {
        2.0 * (self.0 + 1.0 / self.0)
    }
}

/// Uniform grid `start, start + step, ...` up to `stop` (inclusive within half a step).
pub fn aspect_grid(start: f64, stop: f64, step: f64) -> Result<Vec<RectAspect>> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::InvalidInput(format!("grid step {step} must be positive")));
    }
    if !(stop >= start) {
        return Err(Error::InvalidInput(format!("grid stop {stop} below start {start}")));
    }
    let count = ((stop - start) / step + 0.5).floor() as usize + 1;
    // on a decimal lattice (start a multiple of step, 1/step integral) points
    // are formed exactly, so 1.136 prints as 1.136 rather than 1.1360000000000001
    let offset = start / step;
    let on_lattice = (offset - offset.round()).abs() <= 1e-9 * offset.abs().max(1.0);
    (0..count)
        .map(|i| {
            let x = if on_lattice {
                lattice_point(offset.round() as i64 + i as i64, step)
            } else {
                start + i as f64 * step
            };
            RectAspect::new(x)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_reciprocal() {
        assert_eq!(RectAspect::canonical(0.5).unwrap().value(), 2.0);
        assert!(RectAspect::new(0.9).is_err());
        assert!((RectAspect::new(2.0).unwrap().perimeter() - 5.0).abs() < 1e-15);
    }

    #[test]
    fn grid_endpoints() {
        let g = aspect_grid(1.0, 2.0, 1e-3).unwrap();
        assert_eq!(g.len(), 1001);
        assert!((g[1000].value() - 2.0).abs() < 1e-12);
        assert_eq!(g[136].value(), 1.136);
        assert_eq!(aspect_grid(1.0, 1.1, 0.01).unwrap()[7].value(), 1.07);
        assert!(aspect_grid(1.0, 2.0, 0.0).is_err());
        assert!(aspect_grid(0.5, 2.0, 0.1).is_err());
    }
}
