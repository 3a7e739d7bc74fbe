//! Self-checks: each suite recomputes a known identity and compares it with
//! a fixed limit.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::continuation::SolutionPair;
use crate::error::{Error, Result};
use crate::gbeta::gamma::{gamma, incomplete_gamma_upper};
use crate::gbeta::{g_beta, g_beta_rational, GbetaCoeffs};
use crate::kernel::{KernelParams, Parity};
use crate::mittag::{ml_series, ml_via_gbeta};
use crate::rhp::{verify_rhp, Parametrix, RhpGrid};
use crate::solver::{default_tolerance, picard_solve, solve_ray, Tag};
use crate::surface::SurfacePoint;

pub const SUITES: [&str; 6] = ["oracle", "residual", "connection", "rhp", "gbeta-cross", "ml-identity"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub limit: f64,
    pub pass: bool,
}

impl Check {
    /// Passes when `value < limit` (NaN fails).
    pub fn below(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Self { name: name.into(), value, limit, pass: value < limit }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub seconds: f64,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn finish(suite: &str, start: Instant, checks: Vec<Check>) -> Self {
        Self { suite: suite.into(), pass: checks.iter().all(|c| c.pass), seconds: start.elapsed().as_secs_f64(), checks }
    }

    /// Largest `value / limit` over the checks.
    pub fn worst_ratio(&self) -> f64 {
        self.checks.iter().map(|c| c.value / c.limit).fold(0.0, f64::max)
    }
}

fn tag_name(tag: Tag) -> &'static str {
    match tag {
        Tag::U => "u",
        Tag::V => "v",
    }
}

/// Nyström against successive approximation, sup over nodes.
pub fn oracle(betas: &[f64]) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut checks = Vec::new();
    for &beta in betas {
        let p = KernelParams::new(beta)?;
        for tag in [Tag::U, Tag::V] {
            let a = solve_ray(&p, tag, 0.0, 1e-10)?;
            let b = picard_solve(&p, tag, 1e-10)?;
            let diff = a.values().iter().zip(b.values()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
            checks.push(Check::below(format!("beta={beta} {}", tag_name(tag)), diff, 1e-8));
        }
    }
    Ok(SuiteReport::finish("oracle", start, checks))
}

/// Off-grid integral-equation residual against ten times the tolerance.
pub fn residual(betas: &[f64]) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut checks = Vec::new();
    for &beta in betas {
        let p = KernelParams::new(beta)?;
        let tol = default_tolerance(beta);
        for tag in [Tag::U, Tag::V] {
            let g = solve_ray(&p, tag, 0.0, tol)?;
            checks.push(Check::below(format!("beta={beta} {} tol={tol:e}", tag_name(tag)), g.residual(), 10.0 * tol));
        }
    }
    Ok(SuiteReport::finish("residual", start, checks))
}

/// `u(r e^{-i pi}) - u(r e^{i pi}) = 2 pi i K(r) u(r)` and the `v` analogue.
pub fn connection(betas: &[f64], radii: &[f64]) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut checks = Vec::new();
    for &beta in betas {
        let pair = SolutionPair::new(KernelParams::new(beta)?, 1e-10);
        for tag in [Tag::U, Tag::V] {
            for &r in radii {
                let res = pair.get(tag).connection_residual(r)?;
                checks.push(Check::below(format!("beta={beta} {} r={r}", tag_name(tag)), res, 1e-7));
            }
        }
    }
    Ok(SuiteReport::finish("connection", start, checks))
}

/// Points with `arg z in (0, pi)` for the bilinear identity.
pub fn bilinear_sample() -> Vec<SurfacePoint> {
    [(1.3, 0.4), (0.1, 0.2), (0.5, 1.0), (2.0, 1.5), (4.0, 2.0), (10.0, 2.6), (0.02, 3.0), (30.0, 0.8)]
        .iter()
        .map(|&(r, phi)| SurfacePoint { r, phi })
        .collect()
}

/// Full model-problem check for both parities, plus the bilinear identity
/// `u(z) v(z e^{-i pi}) + v(z) u(z e^{-i pi}) = 2`.
pub fn rhp(beta: f64) -> Result<SuiteReport> {
    let start = Instant::now();
    let p = KernelParams::new(beta)?;
    let mut checks = Vec::new();
    let mut l = Parametrix::new(p, Parity::Even, 1e-10);
    let grid = RhpGrid::default();
    for parity in [Parity::Even, Parity::Odd] {
        l = Parametrix::from_pair(l.into_pair(), parity);
        let r = verify_rhp(&l, &grid)?;
        let name = format!("beta={beta} {parity:?}");
        checks.push(Check::below(format!("{name} jump"), r.max_jump_residual, grid.jump_tol));
        checks.push(Check::below(format!("{name} det v_L - 1"), r.max_jump_det_defect, f64::EPSILON));
        checks.push(Check::below(format!("{name} det L - 1"), r.max_det_defect, grid.det_tol));
        let far = r.far_field.iter().map(|f| f.scaled_deviation).fold(0.0, f64::max);
        checks.push(Check::below(format!("{name} far |L-I||s|"), far, grid.far_bound));
        let origin = r.origin.iter().map(|o| o.norm / o.scale).fold(0.0, f64::max);
        checks.push(Check::below(format!("{name} origin |L|/eps"), origin, grid.origin_bound));
    }
    let pair = l.pair();
    let mut worst: f64 = 0.0;
    for z in bilinear_sample() {
        worst = worst.max(pair.bilinear_defect(z)?.norm());
    }
    checks.push(Check::below(format!("beta={beta} bilinear"), worst, 1e-6));
    Ok(SuiteReport::finish("rhp", start, checks))
}

/// `G_beta` identities and cross-method agreement.
pub fn gbeta_cross() -> Result<SuiteReport> {
    let start = Instant::now();
    let tol = 1e-12;
    let mut checks = Vec::new();
    for x in [0.5, 1.0, 2.0] {
        let g = g_beta(SurfacePoint::real(x), 1.0, tol)?.value;
        let want = x.exp() * incomplete_gamma_upper(0.0, x)?;
        checks.push(Check::below(format!("G_1({x}) = e^z Gamma(0,z)"), (g - want).norm(), 1e-9));
    }
    let probes = [(1.0, 0.0), (0.2, 0.0), (5.0, 0.0), (0.5, 2.0), (0.5, -2.0), (3.0, 1.0), (3.0, -2.8), (0.05, 1.2), (12.0, 0.3)];
    for (p, q) in [(1u64, 2u64), (1, 3), (2, 3)] {
        let mut worst: f64 = 0.0;
        for &(r, phi) in &probes {
            let z = SurfacePoint { r, phi };
            let a = g_beta_rational(p, q, z, tol)?.value;
            let b = g_beta(z, p as f64 / q as f64, tol)?.value;
            worst = worst.max((a - b).norm());
        }
        checks.push(Check::below(format!("rational {p}/{q} vs quadrature"), worst, 1e-8));
    }
    // c_0 = sum_n (-1)^n / (n! n beta) + Gamma(0, 1) / beta against -gamma / beta
    for beta in [0.5, 1.0 / 3.0, std::f64::consts::FRAC_1_SQRT_2] {
        let mut series = incomplete_gamma_upper(0.0, 1.0)? / beta;
        let mut inv_fact = 1.0;
        for n in 1..40 {
            inv_fact /= n as f64;
            series += if n % 2 == 0 { inv_fact } else { -inv_fact } / (n as f64 * beta);
        }
        let c0 = GbetaCoeffs::new(beta, 0, 1)?.c0;
        checks.push(Check::below(format!("c_0 at beta={beta:.4}"), (series - c0).abs(), 1e-10));
    }
    for beta in [0.5, 0.7, 0.9] {
        let z = 1e4;
        let g = g_beta(SurfacePoint::real(z), beta, tol)?.value.re;
        let lead = gamma(1.0 / beta) / beta;
        checks.push(Check::below(format!("z G(z) -> Gamma(1/beta)/beta at beta={beta}"), (z * g / lead - 1.0).abs(), 1e-3));
    }
    Ok(SuiteReport::finish("gbeta-cross", start, checks))
}

/// `Sigma + I` against the power series over the standard grid.
pub fn ml_identity() -> Result<SuiteReport> {
    let start = Instant::now();
    let mut checks = Vec::new();
    let zs = [Complex64::new(0.5, 0.0), Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0), Complex64::from_polar(4.0, PI / 6.0)];
    for alpha in [1.2, 1.5, 1.8, 2.3, 2.7] {
        for z in zs {
            let series = ml_series(alpha, z)?;
            let d = ml_via_gbeta(alpha, z, 1e-12)?;
            let rel = (d.total() - series).norm() / (1.0 + series.norm());
            checks.push(Check::below(format!("alpha={alpha} z={z:.4}"), rel, 1e-6));
        }
    }
    Ok(SuiteReport::finish("ml-identity", start, checks))
}

/// Runs one suite by name; `beta` replaces the default parameter set where
/// the suite has one.
pub fn run_suite(name: &str, beta: Option<f64>) -> Result<SuiteReport> {
    let pick = |defaults: &[f64]| beta.map_or_else(|| defaults.to_vec(), |b| vec![b]);
    match name {
        "oracle" => oracle(&pick(&[0.5, 0.6, 0.75, 0.9])),
        "residual" => residual(&pick(&[0.2, 0.35, 0.5, 0.6, 0.8])),
        "connection" => connection(&pick(&[0.5, 0.6, 0.8]), &[0.5, 1.0, 2.0, 5.0]),
        "rhp" => rhp(beta.unwrap_or(0.6)),
        "gbeta-cross" => gbeta_cross(),
        "ml-identity" => ml_identity(),
        other => Err(Error::Config { field: "suite".into(), reason: format!("unknown suite `{other}`; expected one of {}", SUITES.join(", ")) }),
    }
}
