//! Gauss-Legendre quadrature nodes and weights.
//!
//! Nodes are roots of the Legendre polynomial, found by Newton
//! iteration from the Chebyshev initial guess; a rule with `p` points
//! integrates polynomials of degree `2p - 1` exactly.

use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math resolves through this trait when no dependency links std
use num_traits::Float;

use crate::error::Error;
use crate::Result;

/// A `p`-point Gauss-Legendre rule on the reference interval [-1, 1].
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds the rule with `p >= 1` points.
    pub fn new(p: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::EmptyGrid);
        }
        let mut nodes = Vec::with_capacity(p);
        let mut weights = Vec::with_capacity(p);
        for i in 0..p {
            // Chebyshev-like initial guess, then Newton on P_p
            let mut x = (core::f64::consts::PI * (i as f64 + 0.75) / (p as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (v, d) = legendre_with_derivative(p, x);
                let step = v / d;
                x -= step;
                if step.abs() < 1e-15 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(p, x);
            nodes.push(x);
            weights.push(2.0 / ((1.0 - x * x) * d * d));
        }
        // ascending node order for reproducible output
        let mut idx: Vec<usize> = (0..p).collect();
        idx.sort_by(|&a, &b| nodes[a].partial_cmp(&nodes[b]).unwrap());
        Ok(GaussLegendre {
            nodes: idx.iter().map(|&i| nodes[i]).collect(),
            weights: idx.iter().map(|&i| weights[i]).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped to the interval [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> Vec<(f64, f64)> {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(self.weights.iter())
            .map(|(&x, &w)| (mid + half * x, half * w))
            .collect()
    }

    /// Integrates a scalar function over [a, b] split into `panels`
    /// equal panels.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, panels: usize, mut f: F) -> f64 {
        let width = (b - a) / panels as f64;
        let mut acc = 0.0;
        for k in 0..panels {
            let lo = a + k as f64 * width;
            for (x, w) in self.mapped(lo, lo + width) {
                acc += w * f(x);
            }
        }
        acc
    }
}

/// Value and derivative of the Legendre polynomial P_p at x.
fn legendre_with_derivative(p: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0f64;
    let mut p1 = x;
    if p == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=p {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = (p as f64) * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_interval_length() {
        for p in 1..=12 {
            let gl = GaussLegendre::new(p).unwrap();
            let total: f64 = gl.mapped(-1.0, 1.0).iter().map(|(_, w)| w).sum();
            assert!((total - 2.0).abs() < 1e-13, "p = {p}, total = {total}");
        }
    }

    #[test]
    fn five_point_rule_is_exact_to_degree_nine() {
        let gl = GaussLegendre::new(5).unwrap();
        // integral of x^9 over [0, 1] is 1/10
        let v = gl.integrate(0.0, 1.0, 1, |x| x.powi(9));
        assert!((v - 0.1).abs() < 1e-15);
        // and x^10 is not integrated exactly, so the rule is sharp
        let v10 = gl.integrate(0.0, 1.0, 1, |x| x.powi(10));
        assert!((v10 - 1.0 / 11.0).abs() > 1e-12);
    }

    #[test]
    fn known_two_point_nodes() {
        let gl = GaussLegendre::new(2).unwrap();
        let inv_sqrt3 = 1.0 / 3.0f64.sqrt();
        assert!((gl.nodes[0] + inv_sqrt3).abs() < 1e-15);
        assert!((gl.nodes[1] - inv_sqrt3).abs() < 1e-15);
        assert!((gl.weights[0] - 1.0).abs() < 1e-15);
        assert!((gl.weights[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn composite_refinement_gains_expected_order() {
        // 2-point rule has order 4: halving the panel width should
        // shrink the error by about 2^4
        let gl = GaussLegendre::new(2).unwrap();
        let exact = 1.0f64.exp() - 1.0;
        let e1 = (gl.integrate(0.0, 1.0, 1, |x| x.exp()) - exact).abs();
        let e2 = (gl.integrate(0.0, 1.0, 2, |x| x.exp()) - exact).abs();
        let ratio = e1 / e2;
        assert!(ratio > 10.0 && ratio < 26.0, "ratio = {ratio}");
    }

    #[test]
    fn smooth_oscillatory_integral() {
        let gl = GaussLegendre::new(8).unwrap();
        // integral of cos over [0, pi/2] is 1
        let v = gl.integrate(0.0, core::f64::consts::FRAC_PI_2, 2, |x| x.cos());
        assert!((v - 1.0).abs() < 1e-14);
    }
}
