//! Expansion `u ~ 1 + sum c_k / z^k`, `v ~ 1 + sum d_k / z^k` at infinity,
//! with coefficients as moments of the discrete solution, and the Stokes lines.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::KernelParams;
use crate::solver::{SolutionGrid, Tag};
use crate::surface::SurfacePoint;

/// Largest moment order whose weight `t^{k-1} exp(-t^beta sin(pi beta/2))`
/// peaks inside `[0, T_max / 2]`.
pub fn k_max(g: &SolutionGrid) -> usize {
    let p = g.params();
    let half = 0.5 * g.scheme().t_max;
    (p.beta * p.sin_half * half.powf(p.beta)).floor() as usize + 1
}

fn moment_coeff(k: usize, g: &SolutionGrid, want: Tag) -> Result<Complex64> {
    if g.tag() != want {
        return Err(Error::Domain(format!("coefficient needs a {want:?} grid, got {:?}", g.tag())));
    }
    if g.theta() != 0.0 {
        return Err(Error::Domain("coefficients are moments over the positive axis".into()));
    }
    let guard = k_max(g);
    if k == 0 || k > guard {
        return Err(Error::MomentOrder { k, k_max: guard });
    }
    let m = g.moment(k as i32 - 1);
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    Ok(match want {
        Tag::U => m * sign,
        Tag::V => -m * sign,
    })
}

/// `c_k = (-1)^{k-1} int K(t) t^{k-1} u(t) dt` from a positive-axis `u` grid.
pub fn coeff_c(k: usize, g: &SolutionGrid) -> Result<Complex64> {
    moment_coeff(k, g, Tag::U)
}

/// `d_k = (-1)^k int K(t) t^{k-1} v(t) dt` from a positive-axis `v` grid.
pub fn coeff_d(k: usize, g: &SolutionGrid) -> Result<Complex64> {
    moment_coeff(k, g, Tag::V)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Center {
    Infinity,
    Origin,
}

/// Partial sums `1 + sum_{k <= n} a_k / z^k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesExpansion {
    pub center: Center,
    pub tag: Tag,
    /// `a_1, a_2, ...`.
    pub coefficients: Vec<Complex64>,
    /// Open range of `arg z` where the expansion holds.
    pub sector: (f64, f64),
    /// How `err_est` is formed.
    pub error_model: String,
}

impl SeriesExpansion {
    /// Coefficients `1..=terms` from a positive-axis grid (`u` or `v`).
    pub fn at_infinity(g: &SolutionGrid, terms: usize) -> Result<Self> {
        let coefficients = (1..=terms)
            .map(|k| match g.tag() {
                Tag::U => coeff_c(k, g),
                Tag::V => coeff_d(k, g),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            center: Center::Infinity,
            tag: g.tag(),
            coefficients,
            sector: (-1.5 * PI, 1.5 * PI),
            error_model: "first omitted term".into(),
        })
    }
}

/// Partial sum with `terms` coefficients; `err_est` is the modulus of the
/// first omitted term (of the last kept one when none is left).
pub fn eval_expansion(e: &SeriesExpansion, z: SurfacePoint, terms: usize) -> Result<(Complex64, f64)> {
    let (lo, hi) = e.sector;
    if !(z.phi > lo && z.phi < hi) {
        let boundary = if z.phi >= hi { hi } else { lo };
        return Err(Error::SectorViolation { phi: z.phi, lo, hi, boundary });
    }
    if terms > e.coefficients.len() {
        return Err(Error::NotEnoughTerms { available: e.coefficients.len(), requested: terms });
    }
    let inv = match e.center {
        Center::Infinity => 1.0 / z.to_complex(),
        Center::Origin => z.to_complex(),
    };
    let mut value = Complex64::new(1.0, 0.0);
    let mut p = Complex64::new(1.0, 0.0);
    let mut last = 0.0;
    for a in &e.coefficients[..terms] {
        p *= inv;
        last = (a * p).norm();
        value += a * p;
    }
    let err = match e.coefficients.get(terms) {
        Some(a) => (a * p * inv).norm(),
        None => last,
    };
    Ok((value, err))
}

/// `lim x (u(x) - 1)` from `x in {1e3, 3e3, 1e4}`, fitting `c_1 + b/x + c/x^2`.
pub fn richardson_c1(g: &SolutionGrid) -> f64 {
    let xs = [1e3, 3e3, 1e4];
    let f: Vec<f64> = xs.iter().map(|&x| x * (g.interpolate(x).re - 1.0)).collect();
    // Lagrange extrapolation in h = 1/x to h = 0
    let h: Vec<f64> = xs.iter().map(|x| 1.0 / x).collect();
    let mut acc = 0.0;
    for i in 0..3 {
        let mut w = 1.0;
        for j in 0..3 {
            if j != i {
                w *= h[j] / (h[j] - h[i]);
            }
        }
        acc += w * f[i];
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StokesLines {
    pub alpha: f64,
    pub l: u32,
    /// `+a`, then `-a`, with `a = pi/2 (3 - alpha) + 2 (l - 1) pi`.
    pub angles: [f64; 2],
}

/// Stokes lines of `u` and `v`; `l` is fixed by `alpha = 1/beta in (4l - 3, 4l + 1]`.
pub fn stokes_lines(p: &KernelParams) -> StokesLines {
    let mut alpha = 1.0 / p.beta;
    let near = alpha.round();
    if (alpha - near).abs() < 1e-12 {
        alpha = near;
    }
    let l = ((alpha - 1.0) / 4.0).ceil().max(1.0);
    let a = FRAC_PI_2 * (3.0 - alpha) + 2.0 * (l - 1.0) * PI;
    StokesLines { alpha, l: l as u32, angles: [a, -a] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::continuation::RaySolutions;
    use crate::solver::solve_ray;

    fn grid(beta: f64, tag: Tag) -> SolutionGrid {
        solve_ray(&KernelParams::new(beta).unwrap(), tag, 0.0, 1e-10).unwrap()
    }

    #[test]
    fn null_kernel_has_zero_coefficients() {
        let p = KernelParams::new(0.6).unwrap().nulled();
        let g = solve_ray(&p, Tag::U, 0.0, 1e-8).unwrap();
        for k in 1..4 {
            assert_eq!(coeff_c(k, &g).unwrap(), Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn first_coefficients_and_guard() {
        let u = grid(0.6, Tag::U);
        let v = grid(0.6, Tag::V);
        let c1 = coeff_c(1, &u).unwrap();
        let d1 = coeff_d(1, &v).unwrap();
        assert!(c1.re > 0.0 && c1.im == 0.0);
        assert!(d1.re < 0.0);
        assert!(matches!(coeff_c(k_max(&u) + 1, &u), Err(Error::MomentOrder { .. })));
        assert!(coeff_c(1, &v).is_err());
        // independent estimate from the interpolant far out
        let rich = richardson_c1(&u);
        assert!((rich / c1.re - 1.0).abs() < 1e-5, "{rich} vs {c1}");
    }

    #[test]
    fn second_order_remainder() {
        let u = grid(0.6, Tag::U);
        let c1 = coeff_c(1, &u).unwrap().re;
        let rem = |x: f64| (u.interpolate(x).re - 1.0 - c1 / x).abs();
        let ratio = rem(1e3) / rem(1e4);
        assert!(ratio > 100.0 / 4.0 && ratio < 100.0 * 4.0, "{ratio}");
    }

    #[test]
    fn partial_sums_and_errors() {
        let u = grid(0.6, Tag::U);
        let e = SeriesExpansion::at_infinity(&u, 4).unwrap();
        let z = SurfacePoint::new(1e3, FRAC_PI_2).unwrap();
        let (v0, err0) = eval_expansion(&e, z, 0).unwrap();
        assert_eq!(v0, Complex64::new(1.0, 0.0));
        assert!((err0 - e.coefficients[0].norm() / 1e3).abs() < 1e-18);
        let (v2, _) = eval_expansion(&e, z, 2).unwrap();
        let (v3, _) = eval_expansion(&e, z, 3).unwrap();
        assert!(((v3 - v2).norm() - e.coefficients[2].norm() / 1e9).abs() < 1e-20);
        let rs = RaySolutions::new(*u.params(), Tag::U, 1e-10);
        let direct = rs.eval_surface(z).unwrap();
        let (approx, err) = eval_expansion(&e, z, 2).unwrap();
        assert!((direct - approx).norm() < 2.0 * err.max(1e-12), "{direct} {approx} {err}");
        assert!((direct - 1.0).norm() < 2.0 * e.coefficients[0].norm() / 1e3);
        assert!(matches!(eval_expansion(&e, SurfacePoint::new(1e3, 5.0).unwrap(), 1), Err(Error::SectorViolation { .. })));
        assert!(matches!(eval_expansion(&e, z, 5), Err(Error::NotEnoughTerms { .. })));
    }

    #[test]
    fn stokes_examples() {
        let at = |b: f64| stokes_lines(&KernelParams::new(b).unwrap());
        let s = at(0.5);
        assert_eq!(s.l, 1);
        assert!((s.angles[0] - FRAC_PI_2).abs() < 1e-15);
        let s = at(0.25);
        assert_eq!(s.l, 1);
        assert!((s.angles[0] + FRAC_PI_2).abs() < 1e-15);
        let s = at(1.0 / 6.0);
        assert_eq!(s.l, 2);
        assert!((s.angles[0] - FRAC_PI_2).abs() < 1e-14);
        assert_eq!(s.angles[1], -s.angles[0]);
    }

    #[test]
    fn stokes_angles_exhaustive() {
        for i in 0..=16 {
            let beta = 0.1 + 0.05 * i as f64;
            let s = stokes_lines(&KernelParams::new(beta).unwrap());
            let l = s.l as f64;
            assert!(s.alpha > 4.0 * l - 3.0 && s.alpha <= 4.0 * l + 1.0, "beta {beta}");
            let base = FRAC_PI_2 * (3.0 - s.alpha);
            assert!((s.angles[0] - base - 2.0 * (l - 1.0) * PI).abs() < 1e-12);
            assert!(s.angles[0] >= -PI && s.angles[0] < PI, "beta {beta}: {}", s.angles[0]);
        }
    }
}
