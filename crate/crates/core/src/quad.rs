//! Gauss–Legendre rules: fixed-order nodes on `[-1, 1]`, panel mapping, and a
//! globally adaptive bisection integrator for complex-valued integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// An `n`-point Gauss–Legendre rule on the reference interval `[-1, 1]`,
/// nodes ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds the rule by Newton iteration on `P_n`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre order must be positive");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = (n + 1) / 2;
        for i in 0..m {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                    let (_, d) = legendre_with_derivative(n, x);
                    dp = d;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[m - 1] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Nodes and weights mapped affinely onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }

    pub fn integrate_complex<F: FnMut(f64) -> Complex64>(&self, a: f64, b: f64, mut f: F) -> Complex64 {
        self.mapped(a, b).map(|(x, w)| f(x) * w).sum()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
    pub intervals: usize,
}

/// Globally adaptive integrator: the interval with the largest local error
/// (rule on the whole interval vs. rule on its two halves) is bisected until
/// the summed error meets `max(abs_tol, rel_tol * |value|)`.
#[derive(Debug, Clone)]
pub struct Adaptive {
    rule: GaussLegendre,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

struct Piece {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

impl Default for Adaptive {
    fn default() -> Self {
        Self::new(1e-13, 1e-13)
    }
}

impl Adaptive {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Self {
        Self {
            rule: GaussLegendre::new(10),
            abs_tol,
            rel_tol,
            max_intervals: 20_000,
        }
    }

    fn piece<F: FnMut(f64) -> Complex64>(&self, a: f64, b: f64, f: &mut F) -> Piece {
        let m = 0.5 * (a + b);
        let whole = self.rule.integrate_complex(a, b, &mut *f);
        let halves = self.rule.integrate_complex(a, m, &mut *f) + self.rule.integrate_complex(m, b, &mut *f);
        Piece {
            a,
            b,
            value: halves,
            error: (whole - halves).norm(),
        }
    }

    /// Integrates over `[breaks[0], breaks[last]]`, seeding the partition with
    /// the given breakpoints.
    pub fn integrate_breaks<F: FnMut(f64) -> Complex64>(&self, breaks: &[f64], mut f: F) -> Result<Estimate> {
        assert!(breaks.len() >= 2, "need at least one interval");
        let mut heap = BinaryHeap::new();
        for pair in breaks.windows(2) {
            if pair[1] > pair[0] {
                heap.push(self.piece(pair[0], pair[1], &mut f));
            }
        }
        loop {
            let value: Complex64 = heap.iter().map(|p| p.value).sum();
            let error: f64 = heap.iter().map(|p| p.error).sum();
            let target = self.abs_tol.max(self.rel_tol * value.norm());
            if error <= target {
                return Ok(Estimate { value, error, intervals: heap.len() });
            }
            if heap.len() >= self.max_intervals {
                return Err(Error::Quadrature { achieved: error, requested: target });
            }
            let worst = heap.pop().expect("non-empty partition");
            let m = 0.5 * (worst.a + worst.b);
            if m <= worst.a || m >= worst.b {
                // interval cannot be split further in floating point
                return Err(Error::Quadrature { achieved: error, requested: target });
            }
            heap.push(self.piece(worst.a, m, &mut f));
            heap.push(self.piece(m, worst.b, &mut f));
        }
    }

    pub fn integrate<F: FnMut(f64) -> Complex64>(&self, a: f64, b: f64, f: F) -> Result<Estimate> {
        self.integrate_breaks(&[a, b], f)
    }

    pub fn integrate_real<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> Result<(f64, f64)> {
        let est = self.integrate(a, b, |x| Complex64::new(f(x), 0.0))?;
        Ok((est.value.re, est.error))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn weights_sum_to_two_and_are_positive() {
        for n in [1, 2, 5, 16, 33] {
            let gl = GaussLegendre::new(n);
            assert!(gl.weights().iter().all(|&w| w > 0.0));
            assert_abs_diff_eq!(gl.weights().iter().sum::<f64>(), 2.0, epsilon = 1e-14);
            assert!(gl.nodes().windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn exact_for_polynomials_up_to_degree_2n_minus_1() {
        let gl = GaussLegendre::new(8);
        for deg in 0..16 {
            let exact = (2.0f64.powi(deg + 1) - (-1.0f64).powi(deg + 1)) / (deg as f64 + 1.0);
            let got = gl.integrate(-1.0, 2.0, |x| x.powi(deg));
            assert_abs_diff_eq!(got, exact, epsilon = 1e-12 * exact.abs().max(1.0));
        }
    }

    #[test]
    fn sixteen_point_nodes_match_tabulated_values() {
        let gl = GaussLegendre::new(16);
        assert_abs_diff_eq!(gl.nodes()[15], 0.989_400_934_991_649_9, epsilon = 1e-15);
        assert_abs_diff_eq!(gl.weights()[15], 0.027_152_459_411_754_1, epsilon = 1e-15);
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        let q = Adaptive::new(1e-12, 1e-12);
        let (v, _) = q.integrate_real(0.0, 1.0, |x| x.sqrt().ln()).unwrap();
        assert_abs_diff_eq!(v, -0.5, epsilon = 1e-10);
    }

    #[test]
    fn adaptive_near_pole_complex() {
        // ∫_0^1 dx/(x - 0.5 - 1e-3 i)
        let c = Complex64::new(0.5, 1e-3);
        let q = Adaptive::new(1e-12, 1e-12);
        let est = q.integrate(0.0, 1.0, |x| 1.0 / (x - c)).unwrap();
        let exact = (Complex64::new(1.0, 0.0) - c).ln() - (-c).ln();
        assert!((est.value - exact).norm() < 1e-10);
    }
}
