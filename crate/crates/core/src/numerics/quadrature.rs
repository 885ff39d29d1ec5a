use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Integrates `f` over `[-1, 1]`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Nodes and weights mapped affinely onto `[lo, hi]`.
    pub fn mapped(&self, lo: f64, hi: f64) -> (Vec<f64>, Vec<f64>) {
        let half = 0.5 * (hi - lo);
        let centre = 0.5 * (hi + lo);
        let nodes = self.nodes.iter().map(|&x| centre + half * x).collect();
        let weights = self.weights.iter().map(|&w| half * w).collect();
        (nodes, weights)
    }

    /// Nodes and weights of the rule repeated on `panels` equal pieces of `[lo, hi]`.
    pub fn composite(&self, lo: f64, hi: f64, panels: usize) -> (Vec<f64>, Vec<f64>) {
        let panels = panels.max(1);
        let step = (hi - lo) / panels as f64;
        let mut nodes = Vec::with_capacity(panels * self.order());
        let mut weights = Vec::with_capacity(panels * self.order());
        for p in 0..panels {
            let a = lo + p as f64 * step;
            let b = if p + 1 == panels { hi } else { a + step };
            let (x, w) = self.mapped(a, b);
            nodes.extend(x);
            weights.extend(w);
        }
        (nodes, weights)
    }
}

/// Legendre polynomial `P_n(x)` and its derivative by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p_prev, mut p) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p_next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = p_next;
    }
    let nf = n as f64;
    let dp = nf * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// `order`-point Gauss-Legendre rule, nodes ascending.
///
/// Roots of `P_order` are refined by Newton's method from the asymptotic
/// guess `cos(pi (i - 1/4) / (order + 1/2))`; the rule is symmetric, so only
/// the non-negative half is computed.
pub fn gauss_legendre(order: usize) -> Result<QuadratureRule> {
    if !(1..=256).contains(&order) {
        return Err(Error::OrderOutOfRange(order));
    }
    if order == 1 {
        return Ok(QuadratureRule {
            nodes: vec![0.0],
            weights: vec![2.0],
        });
    }
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok(QuadratureRule { nodes, weights })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn monomial_integral(d: usize) -> f64 {
        if d % 2 == 1 {
            0.0
        } else {
            2.0 / (d as f64 + 1.0)
        }
    }

    #[test]
    fn low_orders() {
        let r1 = gauss_legendre(1).unwrap();
        assert_eq!(r1.nodes(), &[0.0]);
        assert_eq!(r1.weights(), &[2.0]);
        let r2 = gauss_legendre(2).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert!((r2.nodes()[0] + s).abs() < 1e-15 && (r2.nodes()[1] - s).abs() < 1e-15);
        assert!((r2.weights()[0] - 1.0).abs() < 1e-15 && (r2.weights()[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn order_twenty_degree_38() {
        let r = gauss_legendre(20).unwrap();
        let v = r.integrate(|x| x.powi(38));
        assert!((v - 2.0 / 39.0).abs() < 1e-13, "{v}");
    }

    #[test]
    fn out_of_range() {
        assert_eq!(gauss_legendre(0), Err(Error::OrderOutOfRange(0)));
        assert_eq!(gauss_legendre(257), Err(Error::OrderOutOfRange(257)));
    }

    #[test]
    fn invariants_all_orders() {
        for q in 1..=256 {
            let r = gauss_legendre(q).unwrap();
            assert_eq!(r.order(), q);
            assert!(r.nodes().windows(2).all(|w| w[0] < w[1]), "order {q}");
            assert!(r.nodes().iter().all(|x| x.abs() < 1.0));
            assert!(r.weights().iter().all(|&w| w > 0.0));
            let total: f64 = r.weights().iter().sum();
            assert!((total - 2.0).abs() <= 1e-13, "order {q}: {total}");
        }
    }

    #[test]
    fn monomial_exactness() {
        for q in 1..=256 {
            let r = gauss_legendre(q).unwrap();
            for d in 0..=(2 * q - 1) {
                let exact = monomial_integral(d);
                let got = r.integrate(|x| x.powi(d as i32));
                assert!(
                    (got - exact).abs() <= 1e-12 * exact.abs().max(1.0),
                    "q={q} d={d} got={got} exact={exact}"
                );
            }
        }
    }

    #[test]
    fn high_order_nodes_are_roots() {
        let r = gauss_legendre(256).unwrap();
        for &x in r.nodes() {
            let (p, dp) = legendre_with_derivative(256, x);
            assert!((p / dp).abs() < 1e-14);
        }
    }
}
