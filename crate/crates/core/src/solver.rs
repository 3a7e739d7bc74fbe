//! Nyström solution of `u = 1 + T u` and `v = 1 - T v`, with
//! `(T f)(x) = int_0^inf K(t e^{i theta}) f(t) dt / (t + x)` on the ray
//! `arg t = theta`.
//!
//! The half-line is mapped by `w = t^beta`, which turns the `t^beta`
//! vanishing of the kernel into a regular integrand, then covered by
//! Gauss–Legendre panels graded geometrically toward `w = 0` and capped in
//! width further out. The discrete solution carries its own interpolant:
//! re-applying the discretized equation at an arbitrary point.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{beta_critical, kernel_of_surface_power, KernelParams};
use crate::linalg::{Lu, Matrix};
use crate::quad::GaussLegendre;

/// Which integral equation: `u = 1 + T u` or `v = 1 - T v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tag {
    U,
    V,
}

impl Tag {
    /// `+1` for `u`, `-1` for `v`.
    pub fn sign(self) -> f64 {
        match self {
            Tag::U => 1.0,
            Tag::V => -1.0,
        }
    }
}

/// Solver tolerance used when the caller has no preference.
pub fn default_tolerance(beta: f64) -> f64 {
    if beta >= 0.3 {
        1e-10
    } else {
        1e-8
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchemeOptions {
    /// Gauss–Legendre points per panel.
    pub order: usize,
    /// Ratio between consecutive panel endpoints near `w = 0`.
    pub grading_ratio: f64,
    /// Width cap (in `w = t^beta`) once the geometric growth reaches it.
    pub max_panel_width: f64,
    /// Right end of the first panel `[0, w_1]`; defaults to the tolerance.
    pub first_panel: Option<f64>,
    pub node_budget: usize,
    /// Split every panel into `2^refine` equal pieces.
    pub refine: u32,
}

impl Default for SchemeOptions {
    fn default() -> Self {
        Self {
            order: 16,
            grading_ratio: 2.0,
            max_panel_width: 4.0,
            first_panel: None,
            node_budget: 6000,
            refine: 0,
        }
    }
}

/// Composite rule on `[0, t_max]` along one ray.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureScheme {
    pub beta: f64,
    pub theta: f64,
    /// Points per panel.
    pub order: usize,
    /// Panel endpoints in the variable `w = t^beta`.
    pub panels: Vec<[f64; 2]>,
    /// `t_j`, ascending.
    pub nodes: Vec<f64>,
    /// Weights for `dt`.
    pub weights: Vec<f64>,
    pub t_max: f64,
    pub w_max: f64,
    /// `exp(-rate * w_max)`, the neglected kernel mass scale.
    pub truncation_tol: f64,
}

impl QuadratureScheme {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Substitution exponent `1/beta`.
    pub fn exponent(&self) -> f64 {
        1.0 / self.beta
    }

    /// `sum_j weights_j f(t_j)`.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&t, &w)| w * f(t)).sum()
    }
}

fn panel_layout(w_max: f64, first: f64, opts: &SchemeOptions) -> Vec<[f64; 2]> {
    let mut bounds = vec![0.0, first.min(0.5 * w_max)];
    let mut b = bounds[1];
    while b < w_max {
        let width = (b * (opts.grading_ratio - 1.0)).min(opts.max_panel_width);
        let mut next = b + width;
        if next >= w_max || w_max - next < 0.25 * width {
            next = w_max;
        }
        bounds.push(next);
        b = next;
    }
    let pieces = 1usize << opts.refine;
    let mut panels = Vec::with_capacity((bounds.len() - 1) * pieces);
    for pair in bounds.windows(2) {
        let h = (pair[1] - pair[0]) / pieces as f64;
        for i in 0..pieces {
            let a = pair[0] + h * i as f64;
            let e = if i + 1 == pieces { pair[1] } else { a + h };
            panels.push([a, e]);
        }
    }
    panels
}

/// Scheme for the positive axis with default options.
pub fn build_quadrature(p: &KernelParams, tol: f64) -> Result<QuadratureScheme> {
    build_quadrature_on_ray(p, 0.0, tol, &SchemeOptions::default())
}

pub fn build_quadrature_on_ray(p: &KernelParams, theta: f64, tol: f64, opts: &SchemeOptions) -> Result<QuadratureScheme> {
    if !(tol > 0.0 && tol < 1e-2) {
        return Err(Error::Domain(format!("tolerance must lie in (0, 1e-2), got {tol}")));
    }
    if !(theta.abs() < FRAC_PI_2) {
        return Err(Error::Domain(format!("ray angle must satisfy |theta| < pi/2, got {theta}")));
    }
    let rate = p.ray_decay_rate(theta);
    let w_max = (1.0 / tol).ln() / rate;
    let first = opts.first_panel.unwrap_or(tol);
    let panels = panel_layout(w_max, first, opts);
    let needed = panels.len() * opts.order;
    if needed > opts.node_budget {
        let reach = panels[(opts.node_budget / opts.order).saturating_sub(1).min(panels.len() - 1)][1];
        return Err(Error::NodeBudget {
            tol,
            needed,
            budget: opts.node_budget,
            achieved: (-rate * reach).exp(),
        });
    }
    let gl = GaussLegendre::new(opts.order);
    let alpha = p.alpha;
    let mut nodes = Vec::with_capacity(needed);
    let mut weights = Vec::with_capacity(needed);
    for &[a, b] in &panels {
        for (w, gw) in gl.mapped(a, b) {
            nodes.push(w.powf(alpha));
            weights.push(gw * alpha * w.powf(alpha - 1.0));
        }
    }
    Ok(QuadratureScheme {
        beta: p.beta,
        theta,
        order: opts.order,
        panels,
        nodes,
        weights,
        t_max: w_max.powf(alpha),
        w_max,
        truncation_tol: (-rate * w_max).exp(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Method {
    Nystrom,
    Picard { iterations: usize },
}

/// A discrete solution of one integral equation on one ray.
#[derive(Debug, Clone)]
pub struct SolutionGrid {
    params: KernelParams,
    tag: Tag,
    tol: f64,
    scheme: QuadratureScheme,
    values: Vec<Complex64>,
    residual: f64,
    condition: f64,
    method: Method,
    kernel_weights: Vec<Complex64>,
}

/// Kernel on the ray at `t = w^alpha`, given `w`.
fn ray_kernel(w: f64, theta: f64, p: &KernelParams) -> Complex64 {
    if theta == 0.0 {
        Complex64::new(crate::kernel::kernel_of_power(w, p), 0.0)
    } else {
        kernel_of_surface_power(Complex64::from_polar(w, p.beta * theta), p)
    }
}

fn kernel_weights(p: &KernelParams, scheme: &QuadratureScheme) -> Vec<Complex64> {
    let gl = GaussLegendre::new(scheme.order);
    let mut out = Vec::with_capacity(scheme.len());
    let mut j = 0;
    for &[a, b] in &scheme.panels {
        for (w, _) in gl.mapped(a, b) {
            out.push(ray_kernel(w, scheme.theta, p) * scheme.weights[j]);
            j += 1;
        }
    }
    out
}

fn system_matrix(tag: Tag, scheme: &QuadratureScheme, kw: &[Complex64]) -> Matrix {
    let s = tag.sign();
    let t = &scheme.nodes;
    Matrix::from_fn(t.len(), |j, k| {
        let off = kw[k] * (s / (t[k] + t[j]));
        if j == k {
            Complex64::new(1.0, 0.0) - off
        } else {
            -off
        }
    })
}

/// Nyström solve on the ray `arg t = theta` with default scheme options.
pub fn solve_ray(p: &KernelParams, tag: Tag, theta: f64, tol: f64) -> Result<SolutionGrid> {
    solve_ray_with(p, tag, theta, tol, &SchemeOptions::default())
}

pub fn solve_ray_with(p: &KernelParams, tag: Tag, theta: f64, tol: f64, opts: &SchemeOptions) -> Result<SolutionGrid> {
    let scheme = build_quadrature_on_ray(p, theta, tol, opts)?;
    let kw = kernel_weights(p, &scheme);
    let lu = Lu::factor(system_matrix(tag, &scheme, &kw))?;
    let condition = lu.condition_estimate();
    if !(condition < 1e13) {
        return Err(Error::Singular { condition });
    }
    let ones = vec![Complex64::new(1.0, 0.0); scheme.len()];
    let values = lu.solve(&ones);
    let mut grid = SolutionGrid {
        params: *p,
        tag,
        tol,
        scheme,
        values,
        residual: f64::NAN,
        condition,
        method: Method::Nystrom,
        kernel_weights: kw,
    };
    grid.residual = grid.residual_estimate();
    Ok(grid)
}

/// Successive approximation from `u = 1` on the positive axis; only valid
/// when the operator is a contraction (`beta > beta_c`).
pub fn picard_solve(p: &KernelParams, tag: Tag, tol: f64) -> Result<SolutionGrid> {
    picard_solve_with(p, tag, tol, &SchemeOptions::default(), None)
}

/// As [`picard_solve`]; `max_iterations` caps the sweep count below the
/// contraction-derived bound.
pub fn picard_solve_with(
    p: &KernelParams,
    tag: Tag,
    tol: f64,
    opts: &SchemeOptions,
    max_iterations: Option<usize>,
) -> Result<SolutionGrid> {
    let beta_c = beta_critical();
    if !(p.beta > beta_c) {
        return Err(Error::NotContraction { beta: p.beta, beta_c });
    }
    let scheme = build_quadrature_on_ray(p, 0.0, tol, opts)?;
    let kw = kernel_weights(p, &scheme);
    let n = scheme.len();
    let s = tag.sign();
    let bound = ((tol.ln() / p.contraction_bound.ln()).ceil() as usize) + 1;
    let cap = max_iterations.map_or(bound, |m| m.min(bound));
    let t = &scheme.nodes;
    let mut u = vec![Complex64::new(1.0, 0.0); n];
    let mut next = vec![Complex64::new(0.0, 0.0); n];
    let mut iterations = 0;
    while iterations < cap {
        let mut delta: f64 = 0.0;
        for j in 0..n {
            let tj = t[j];
            let acc: Complex64 = (0..n).map(|k| kw[k] * u[k] / (t[k] + tj)).sum();
            next[j] = Complex64::new(1.0, 0.0) + acc * s;
            delta = delta.max((next[j] - u[j]).norm());
        }
        std::mem::swap(&mut u, &mut next);
        iterations += 1;
        if delta <= 0.1 * tol {
            break;
        }
    }
    let mut grid = SolutionGrid {
        params: *p,
        tag,
        tol,
        scheme,
        values: u,
        residual: f64::NAN,
        condition: f64::NAN,
        method: Method::Picard { iterations },
        kernel_weights: kw,
    };
    grid.residual = grid.residual_estimate();
    Ok(grid)
}

/// Bernstein-ellipse parameter of `z` relative to the panel `[a, b]`.
fn bernstein_rho(z: Complex64, a: f64, b: f64) -> f64 {
    let zeta = (z * 2.0 - (a + b)) / (b - a);
    let s = (zeta * zeta - 1.0).sqrt();
    (zeta + s).norm().max((zeta - s).norm())
}

/// Panels whose ellipse parameter drops below this are split before use.
const RHO_MIN: f64 = 3.0;
const MAX_SPLIT_DEPTH: u32 = 60;

impl SolutionGrid {
    pub fn params(&self) -> &KernelParams {
        &self.params
    }

    pub fn tag(&self) -> Tag {
        self.tag
    }

    pub fn theta(&self) -> f64 {
        self.scheme.theta
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn scheme(&self) -> &QuadratureScheme {
        &self.scheme
    }

    pub fn nodes(&self) -> &[f64] {
        &self.scheme.nodes
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Largest integral-equation residual found at off-grid check points.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn condition(&self) -> f64 {
        self.condition
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// Nyström interpolant at the ray point `x e^{i theta}`, `x >= 0`:
    /// `1 +- sum_k W_k K_k u_k / (t_k + x)`.
    pub fn interpolate(&self, x: f64) -> Complex64 {
        let acc: Complex64 = self
            .kernel_weights
            .iter()
            .zip(&self.values)
            .zip(&self.scheme.nodes)
            .map(|((kw, u), &t)| kw * u / (t + x))
            .sum();
        Complex64::new(1.0, 0.0) + acc * self.tag.sign()
    }

    /// `sum_k W_k K_k t_k^{m} u_k`, the `m`-th moment of `K u`.
    pub(crate) fn moment(&self, m: i32) -> Complex64 {
        self.kernel_weights
            .iter()
            .zip(&self.values)
            .zip(&self.scheme.nodes)
            .map(|((kw, u), &t)| kw * u * t.powi(m))
            .sum()
    }

    /// Stieltjes representation `1 +- int K(t e^{i theta}) u(t e^{i theta}) dt / (t + xi)`
    /// at a complex `xi` with `|arg xi| < pi` (`xi = e^{-i theta} z`).
    ///
    /// Panels whose Bernstein ellipse comes too close to the pole `t = -xi`
    /// (seen in the `w` plane) are bisected, with the solution on the new
    /// nodes supplied by [`SolutionGrid::interpolate`].
    pub fn eval_rotated(&self, xi: Complex64) -> Complex64 {
        let beta = self.params.beta;
        let (rho, phase) = (-xi).to_polar();
        let mag = rho.powf(beta);
        let mut poles = Vec::with_capacity(4);
        for k in -3i32..=3 {
            let ang = beta * (phase + 2.0 * std::f64::consts::PI * k as f64);
            if ang.abs() < std::f64::consts::PI {
                poles.push(Complex64::from_polar(mag, ang));
            }
        }
        let gl = GaussLegendre::new(self.scheme.order);
        let n = self.scheme.order;
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &[a, b]) in self.scheme.panels.iter().enumerate() {
            if poles.iter().all(|&z| bernstein_rho(z, a, b) >= RHO_MIN) {
                for j in i * n..(i + 1) * n {
                    acc += self.kernel_weights[j] * self.values[j] / (self.scheme.nodes[j] + xi);
                }
            } else {
                acc += self.refined_panel(&gl, a, b, xi, &poles, 1);
            }
        }
        Complex64::new(1.0, 0.0) + acc * self.tag.sign()
    }

    fn refined_panel(&self, gl: &GaussLegendre, a: f64, b: f64, xi: Complex64, poles: &[Complex64], depth: u32) -> Complex64 {
        let m = 0.5 * (a + b);
        let mut acc = Complex64::new(0.0, 0.0);
        for (lo, hi) in [(a, m), (m, b)] {
            let close = poles.iter().any(|&z| bernstein_rho(z, lo, hi) < RHO_MIN);
            if close && depth < MAX_SPLIT_DEPTH && hi - lo > 1e-300 {
                acc += self.refined_panel(gl, lo, hi, xi, poles, depth + 1);
            } else {
                let alpha = self.params.alpha;
                for (w, gw) in gl.mapped(lo, hi) {
                    let t = w.powf(alpha);
                    let weight = gw * alpha * w.powf(alpha - 1.0);
                    let k = ray_kernel(w, self.scheme.theta, &self.params);
                    acc += k * self.interpolate(t) * weight / (t + xi);
                }
            }
        }
        acc
    }

    /// Residual of the interpolant against a rule with every panel halved and
    /// the range doubled, at up to 64 check points taken from panel midpoints and quarter points.
    pub fn residual_estimate(&self) -> f64 {
        let gl = GaussLegendre::new(self.scheme.order);
        let alpha = self.params.alpha;
        let mut panels = self.scheme.panels.clone();
        // carry the reference rule past the truncation point
        let [a, b] = *panels.last().expect("scheme has panels");
        let mut edge = b;
        while edge < 2.0 * self.scheme.w_max {
            panels.push([edge, edge + (b - a)]);
            edge += b - a;
        }
        let mut fine = Vec::with_capacity(2 * panels.len() * self.scheme.order);
        for &[a, b] in &panels {
            let m = 0.5 * (a + b);
            for (lo, hi) in [(a, m), (m, b)] {
                for (w, gw) in gl.mapped(lo, hi) {
                    let t = w.powf(alpha);
                    let weight = gw * alpha * w.powf(alpha - 1.0);
                    let kw = ray_kernel(w, self.scheme.theta, &self.params) * weight;
                    fine.push((t, kw * self.interpolate(t)));
                }
            }
        }
        let mut checks = Vec::new();
        for &[a, b] in &self.scheme.panels {
            for f in [0.25, 0.5, 0.75] {
                checks.push((a + f * (b - a)).powf(alpha));
            }
        }
        let stride = (checks.len() as f64 / 64.0).max(1.0);
        let s = self.tag.sign();
        let mut worst: f64 = 0.0;
        let mut i = 0.0;
        while (i as usize) < checks.len() {
            let x = checks[i as usize];
            let tu: Complex64 = fine.iter().map(|&(t, f)| f / (t + x)).sum();
            let r = self.interpolate(x) - 1.0 - tu * s;
            worst = worst.max(r.norm());
            i += stride;
        }
        worst
    }

    pub fn to_document(&self) -> GridDocument {
        GridDocument {
            beta: self.params.beta,
            theta: self.scheme.theta,
            tag: self.tag,
            null_kernel: self.params.is_null(),
            tol: self.tol,
            truncation_tol: self.scheme.truncation_tol,
            t_max: self.scheme.t_max,
            w_max: self.scheme.w_max,
            order: self.scheme.order,
            panels: self.scheme.panels.clone(),
            nodes: self.scheme.nodes.clone(),
            weights: self.scheme.weights.clone(),
            values_re: self.values.iter().map(|v| v.re).collect(),
            values_im: self.values.iter().map(|v| v.im).collect(),
            residual: self.residual,
            condition: self.condition,
            method: self.method,
        }
    }

    pub fn from_document(doc: GridDocument) -> Result<Self> {
        let n = doc.nodes.len();
        if doc.weights.len() != n || doc.values_re.len() != n || doc.values_im.len() != n || doc.panels.len() * doc.order != n {
            return Err(Error::Domain("grid document arrays have inconsistent lengths".into()));
        }
        let mut params = KernelParams::with_range(doc.beta, 1e-6, 1.0 - 1e-6)?;
        if doc.null_kernel {
            params = params.nulled();
        }
        let scheme = QuadratureScheme {
            beta: doc.beta,
            theta: doc.theta,
            order: doc.order,
            panels: doc.panels,
            nodes: doc.nodes,
            weights: doc.weights,
            t_max: doc.t_max,
            w_max: doc.w_max,
            truncation_tol: doc.truncation_tol,
        };
        let kernel_weights = kernel_weights(&params, &scheme);
        Ok(Self {
            params,
            tag: doc.tag,
            tol: doc.tol,
            values: doc.values_re.iter().zip(&doc.values_im).map(|(&r, &i)| Complex64::new(r, i)).collect(),
            scheme,
            residual: doc.residual,
            condition: doc.condition,
            method: doc.method,
            kernel_weights,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_document())?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_document(serde_json::from_str(s)?)
    }
}

/// On-disk form of a [`SolutionGrid`]; floats round-trip bit-exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridDocument {
    pub beta: f64,
    pub theta: f64,
    pub tag: Tag,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub null_kernel: bool,
    pub tol: f64,
    pub truncation_tol: f64,
    pub t_max: f64,
    pub w_max: f64,
    pub order: usize,
    pub panels: Vec<[f64; 2]>,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub values_re: Vec<f64>,
    pub values_im: Vec<f64>,
    pub residual: f64,
    pub condition: f64,
    pub method: Method,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const XS: [f64; 5] = [0.0, 0.01, 1.0, 7.5, 100.0];

    // independent solve: t = e^s, trapezoid in s, dense numpy factorization
    const REFERENCE: [(f64, Tag, [f64; 5]); 6] = [
        (0.5, Tag::U, [1.653523461117616, 1.5602774581637542, 1.2226745846341962, 1.0713657340301455, 1.007214035618391]),
        (0.5, Tag::V, [0.6047691632534202, 0.6442533150131128, 0.8376093839869068, 0.9450381617943491, 0.9943737334912669]),
        (0.6, Tag::U, [1.3970412108122943, 1.3556401631591473, 1.1430911552084613, 1.0437332794949832, 1.0044064983823882]),
        (0.6, Tag::V, [0.7157984977540934, 0.7392924688206297, 0.8854664290388423, 0.9636918314038747, 0.9962894113676924]),
        (0.8, Tag::U, [1.133227788705762, 1.1250174956294545, 1.05153565967335, 1.0145853896605854, 1.0013961935358233]),
        (0.8, Tag::V, [0.8824351202524614, 0.8891234590873637, 0.9529671952319937, 0.9865207328609661, 0.998703180589999]),
    ];

    #[test]
    fn matches_independent_discretization() {
        for (beta, tag, want) in REFERENCE {
            let p = KernelParams::new(beta).unwrap();
            let g = solve_ray(&p, tag, 0.0, 1e-10).unwrap();
            for (x, w) in XS.iter().zip(want) {
                let got = g.interpolate(*x);
                assert!((got.re - w).abs() < 1e-9 && got.im == 0.0, "beta {beta} {tag:?} x {x}: {got}");
            }
        }
    }

    #[test]
    fn truncation_point() {
        let p = KernelParams::new(0.5).unwrap();
        let s = build_quadrature(&p, 1e-10).unwrap();
        assert!((s.t_max - 1060.0).abs() < 1.0, "{}", s.t_max);
        assert!((s.truncation_tol - 1e-10).abs() < 1e-22);
        assert_eq!(s.len(), s.panels.len() * 16);
        assert!(s.nodes.windows(2).all(|w| w[0] < w[1]));
        // int_0^T t^beta dt
        let exact = s.t_max.powf(1.5) / 1.5;
        assert!((s.integrate(|t| t.sqrt()) / exact - 1.0).abs() < 1e-12);
    }

    #[test]
    fn null_kernel_gives_one() {
        let p = KernelParams::new(0.6).unwrap().nulled();
        let g = solve_ray(&p, Tag::V, 0.0, 1e-8).unwrap();
        assert!(g.values().iter().all(|&u| u == Complex64::new(1.0, 0.0)));
        assert_eq!(g.interpolate(3.0), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn picard_agrees_and_respects_iteration_bound() {
        let p = KernelParams::new(0.6).unwrap();
        for tag in [Tag::U, Tag::V] {
            let n = solve_ray(&p, tag, 0.0, 1e-10).unwrap();
            let q = picard_solve(&p, tag, 1e-10).unwrap();
            let bound = (1e-10f64.ln() / p.contraction_bound.ln()).ceil() as usize + 1;
            match q.method() {
                Method::Picard { iterations } => assert!(iterations <= bound),
                m => panic!("{m:?}"),
            }
            let diff = n.values().iter().zip(q.values()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            assert!(diff < 1e-9, "{diff}");
        }
    }

    #[test]
    fn one_picard_step_is_one_plus_t1() {
        let p = KernelParams::new(0.7).unwrap();
        let g = picard_solve_with(&p, Tag::U, 1e-8, &SchemeOptions::default(), Some(1)).unwrap();
        let s = g.scheme();
        let x = s.nodes[40];
        let t1 = s.integrate(|t| crate::kernel::kernel_real_unchecked(t, &p) / (t + x));
        assert!((g.values()[40].re - 1.0 - t1).abs() < 1e-14);
    }

    #[test]
    fn picard_refused_below_critical_beta() {
        let p = KernelParams::new(0.4).unwrap();
        assert!(matches!(picard_solve(&p, Tag::U, 1e-8), Err(Error::NotContraction { .. })));
    }

    #[test]
    fn node_budget_is_enforced() {
        let p = KernelParams::new(0.1).unwrap();
        let opts = SchemeOptions { node_budget: 200, ..Default::default() };
        match solve_ray_with(&p, Tag::U, 0.0, 1e-10, &opts) {
            Err(Error::NodeBudget { needed, budget, achieved, .. }) => {
                assert!(needed > budget && achieved > 1e-10);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let p = KernelParams::new(0.5).unwrap();
        assert!(solve_ray(&p, Tag::U, 0.0, 0.1).is_err());
        assert!(solve_ray(&p, Tag::U, 1.6, 1e-8).is_err());
    }

    #[test]
    fn refinement_changes_little() {
        let p = KernelParams::new(0.35).unwrap();
        let a = solve_ray(&p, Tag::U, 0.0, 1e-10).unwrap();
        let opts = SchemeOptions { refine: 1, ..Default::default() };
        let b = solve_ray_with(&p, Tag::U, 0.0, 1e-10, &opts).unwrap();
        for x in [0.0, 0.3, 4.0, 50.0] {
            assert!((a.interpolate(x) - b.interpolate(x)).norm() < 1e-9);
        }
        assert!(a.residual() < 1e-9);
    }

    #[test]
    fn rotated_ray_continues_the_real_solution() {
        // u is analytic; the ray at pi/4 and the positive axis must agree at a common point
        let p = KernelParams::new(0.6).unwrap();
        let g0 = solve_ray(&p, Tag::U, 0.0, 1e-10).unwrap();
        let g1 = solve_ray(&p, Tag::U, std::f64::consts::FRAC_PI_4, 1e-10).unwrap();
        for z in [Complex64::new(2.0, 0.5), Complex64::new(0.3, -0.1), Complex64::new(-1.0, 1.5)] {
            let a = g0.eval_rotated(z);
            let b = g1.eval_rotated(z * Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4));
            assert!((a - b).norm() < 1e-9, "{z}: {a} vs {b}");
        }
        // on its own ray the refined evaluation reproduces the interpolant
        assert!((g1.eval_rotated(Complex64::new(3.0, 0.0)) - g1.interpolate(3.0)).norm() < 1e-12);
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let p = KernelParams::new(0.55).unwrap();
        let g = solve_ray(&p, Tag::V, 0.3, 1e-8).unwrap();
        let back = SolutionGrid::from_json(&g.to_json().unwrap()).unwrap();
        assert_eq!(back.to_document(), g.to_document());
        assert_eq!(back.interpolate(0.7), g.interpolate(0.7));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(8))]

        #[test]
        fn u_above_one_v_below(beta in 0.45f64..0.95, x in 0.0f64..50.0) {
            let p = KernelParams::new(beta).unwrap();
            let u = solve_ray(&p, Tag::U, 0.0, 1e-8).unwrap();
            let v = solve_ray(&p, Tag::V, 0.0, 1e-8).unwrap();
            // the kernel is positive near the origin, so T1 > 0 on the axis
            prop_assert!(u.interpolate(x).re > 1.0);
            prop_assert!(v.interpolate(x).re < 1.0);
            prop_assert!(u.residual() < 1e-7 && v.residual() < 1e-7);
        }
    }
}
