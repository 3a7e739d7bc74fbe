//! Mittag-Leffler `E_alpha(z) = sum z^n / Gamma(alpha n + 1)` and its split
//! into an exponential sum plus a Hankel-contour integral written with `G_beta`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gbeta::gamma::ln_gamma;
use crate::gbeta::{g_beta, g_beta_principal_value};
use crate::surface::SurfacePoint;

/// Arguments within this of `+-pi` count as on the contour.
const BOUNDARY_EPS: f64 = 1e-12;

/// Power series, summed until terms fall below `1e-17 |sum|` past their peak.
pub fn ml_series(alpha: f64, z: Complex64) -> Result<Complex64> {
    if !(alpha > 0.0) {
        return Err(Error::Domain(format!("alpha must be positive, got {alpha}")));
    }
    if z == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let (r, phi) = z.to_polar();
    let ln_r = r.ln();
    let mut sum = Complex64::new(1.0, 0.0);
    let mut prev = 0.0;
    for n in 1..100_000 {
        let nf = n as f64;
        let ln_mag = nf * ln_r - ln_gamma(alpha * nf + 1.0);
        if ln_mag > 700.0 {
            return Err(Error::Overflow(format!("E_{alpha} series term {n} at |z| = {r}; use ml_via_gbeta")));
        }
        let term = Complex64::from_polar(ln_mag.exp(), nf * phi);
        sum += term;
        if ln_mag < prev && term.norm() < 1e-17 * sum.norm() {
            return Ok(sum);
        }
        prev = ln_mag;
    }
    Err(Error::Overflow(format!("E_{alpha} series did not settle at |z| = {r}")))
}

/// Which of the three `alpha` regimes applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum MlCase {
    /// `alpha` a positive integer: no contour integral.
    Integer { alpha: u64 },
    /// `alpha in (2l - 1, 2l)`.
    OddEven { l: u64 },
    /// `alpha in (2l, 2l + 1)`.
    EvenOdd { l: u64 },
}

impl MlCase {
    pub fn of(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::Domain(format!("alpha must be positive, got {alpha}")));
        }
        let n = alpha.round();
        if (alpha - n).abs() < 1e-12 && n >= 1.0 {
            return Ok(MlCase::Integer { alpha: n as u64 });
        }
        let f = alpha.floor() as u64;
        Ok(if f % 2 == 1 { MlCase::OddEven { l: (f + 1) / 2 } } else { MlCase::EvenOdd { l: f / 2 } })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentialTerm {
    pub k: i64,
    pub z_k: Complex64,
    /// `beta (phi + 2 pi k)`, the unreduced argument of `Z_k`.
    pub arg: f64,
    /// 1 inside `|arg| < pi`, 1/2 on the boundary, 0 outside.
    pub weight: f64,
    pub exp_z_k: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MLDecomposition {
    pub alpha: f64,
    pub beta: f64,
    pub case: MlCase,
    /// Every `k` with `|arg Z_k| <= pi`.
    pub terms: Vec<ExponentialTerm>,
    /// `beta sum_k weight_k e^{Z_k}`.
    pub sigma: Complex64,
    pub i_value: Complex64,
    /// Set when some `Z_k` (or a `G_beta` argument) sits on the negative axis.
    pub on_boundary: bool,
}

impl MLDecomposition {
    pub fn total(&self) -> Complex64 {
        self.sigma + self.i_value
    }

    pub fn retained(&self) -> Vec<i64> {
        self.terms.iter().filter(|t| t.weight == 1.0).map(|t| t.k).collect()
    }
}

fn wrap(a: f64) -> f64 {
    let mut a = a % (2.0 * PI);
    if a > PI {
        a -= 2.0 * PI;
    } else if a <= -PI {
        a += 2.0 * PI;
    }
    a
}

/// `k` with `|beta (phi + 2 pi k)| < pi`, scanning `[-k_max, k_max]`.
pub fn retained_brute_force(alpha: f64, z: Complex64, k_max: i64) -> Vec<i64> {
    let beta = 1.0 / alpha;
    let phi = z.arg();
    (-k_max..=k_max).filter(|&k| (beta * (phi + 2.0 * PI * k as f64)).abs() < PI - BOUNDARY_EPS).collect()
}

/// `G_beta` on the principal sheet at angle `a` (reduced to `(-pi, pi]`), as
/// a principal value when the argument lands on the negative axis.
fn g_principal(r: f64, a: f64, beta: f64, tol: f64) -> Result<(Complex64, bool)> {
    let a = wrap(a);
    if (a.abs() - PI).abs() < BOUNDARY_EPS {
        return Ok((g_beta_principal_value(r, beta, tol)?.value, true));
    }
    Ok((g_beta(SurfacePoint::new(r, a)?, beta, tol)?.value, false))
}

/// The contour integral `I(z)` from two `G_beta` values; zero for integer `alpha`.
pub fn ml_contour_integral(alpha: f64, z: Complex64, tol: f64) -> Result<(Complex64, bool)> {
    match MlCase::of(alpha)? {
        MlCase::Integer { .. } => Ok((Complex64::new(0.0, 0.0), false)),
        MlCase::OddEven { l } => contour_pair(alpha, z, (2 * l) as f64 - 1.0 - alpha, tol),
        MlCase::EvenOdd { l } => contour_pair(alpha, z, (2 * l) as f64 + 1.0 - alpha, tol),
    }
}

/// `(beta / 2 pi i) [G(e^{s pi i} z) - G(e^{-s pi i} z)]`.
fn contour_pair(alpha: f64, z: Complex64, s: f64, tol: f64) -> Result<(Complex64, bool)> {
    let beta = 1.0 / alpha;
    let (r, phi) = z.to_polar();
    let (a, ea) = g_principal(r, phi + s * PI, beta, tol)?;
    let (b, eb) = g_principal(r, phi - s * PI, beta, tol)?;
    Ok(((a - b) * beta / Complex64::new(0.0, 2.0 * PI), ea || eb))
}

/// `E_alpha(z) = Sigma(z) + I(z)` for `z != 0` on the principal sheet.
pub fn ml_via_gbeta(alpha: f64, z: Complex64, tol: f64) -> Result<MLDecomposition> {
    let case = MlCase::of(alpha)?;
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("the decomposition needs z != 0".into()));
    }
    let beta = 1.0 / alpha;
    let (r, phi) = z.to_polar();
    let mag = r.powf(beta);
    let k_max = (alpha / 2.0).ceil() as i64 + 1;
    let mut terms = Vec::new();
    let mut on_boundary = false;
    for k in -k_max..=k_max {
        let arg = beta * (phi + 2.0 * PI * k as f64);
        let gap = arg.abs() - PI;
        let weight = if gap < -BOUNDARY_EPS {
            1.0
        } else if gap.abs() <= BOUNDARY_EPS {
            on_boundary = true;
            0.5
        } else {
            continue;
        };
        let z_k = Complex64::from_polar(mag, arg);
        terms.push(ExponentialTerm { k, z_k, arg, weight, exp_z_k: z_k.exp() });
    }
    let sigma = terms.iter().map(|t| t.exp_z_k * t.weight).sum::<Complex64>() * beta;
    let (i_value, pv) = ml_contour_integral(alpha, z, tol)?;
    Ok(MLDecomposition { alpha, beta, case, terms, sigma, i_value, on_boundary: on_boundary || pv })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn series_special_cases() {
        assert_eq!(ml_series(1.7, c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        let z = c(0.8, -1.3);
        assert!((ml_series(1.0, z).unwrap() - z.exp()).norm() < 1e-14);
        assert!((ml_series(2.0, c(1.0, 0.0)).unwrap().re - 1.0f64.cosh()).abs() < 1e-15);
        assert!((ml_series(2.0, c(1.0, 0.0)).unwrap().re - 1.543_080_634_815_243_7).abs() < 1e-15);
        assert!(matches!(ml_series(0.5, c(1e4, 0.0)), Err(Error::Overflow(_))));
    }

    #[test]
    fn reference_values() {
        // 30-digit series evaluation
        let cases = [
            (1.5, c(2.0, 0.0), c(3.348_700_896_318_395_4, 0.0)),
            (10.0 / 7.0, c(2.0, 0.0), c(3.633_176_297_730_068_3, 0.0)),
            (2.7, c(3.464_101_615_137_754_6, 2.0), c(1.863_802_663_485_044_1, 0.538_366_230_744_517_04)),
        ];
        for (alpha, z, want) in cases {
            let got = ml_series(alpha, z).unwrap();
            assert!((got - want).norm() < 1e-12 * want.norm(), "{alpha}: {got}");
        }
    }

    #[test]
    fn cases() {
        assert_eq!(MlCase::of(2.0).unwrap(), MlCase::Integer { alpha: 2 });
        assert_eq!(MlCase::of(10.0 / 7.0).unwrap(), MlCase::OddEven { l: 1 });
        assert_eq!(MlCase::of(2.5).unwrap(), MlCase::EvenOdd { l: 1 });
        assert_eq!(MlCase::of(0.5).unwrap(), MlCase::EvenOdd { l: 0 });
        assert_eq!(MlCase::of(3.5).unwrap(), MlCase::OddEven { l: 2 });
    }

    #[test]
    fn decomposition_reproduces_series() {
        for (alpha, z) in [(10.0 / 7.0, c(2.0, 0.0)), (2.5, c(1.0, 0.0)), (1.8, c(-3.0, 0.5)), (0.7, c(0.4, 1.1))] {
            let d = ml_via_gbeta(alpha, z, 1e-12).unwrap();
            let s = ml_series(alpha, z).unwrap();
            assert!((d.total() - s).norm() < 1e-9 * (1.0 + s.norm()), "{alpha} {z}: {} vs {s}", d.total());
        }
    }

    #[test]
    fn integer_alpha_is_elementary() {
        let z = c(1.3, 0.2);
        let d = ml_via_gbeta(1.0, z, 1e-12).unwrap();
        assert_eq!(d.i_value, c(0.0, 0.0));
        assert!((d.sigma - z.exp()).norm() < 1e-13);
        // E_2(z) = cosh(sqrt z)
        let d = ml_via_gbeta(2.0, z, 1e-12).unwrap();
        assert!((d.total() - z.sqrt().cosh()).norm() < 1e-13);
        // the two G terms cancel when evaluated anyway
        let (g, _) = contour_pair(2.0, z, 1.0, 1e-12).unwrap();
        assert!(g.norm() < 1e-10, "{g}");
    }

    #[test]
    fn boundary_uses_half_weight() {
        // alpha = 3, z = -1: Z_1 = e^{i pi}
        let d = ml_via_gbeta(3.0, c(-1.0, 0.0), 1e-12).unwrap();
        assert!(d.on_boundary && d.terms.iter().any(|t| t.weight == 0.5));
        let s = ml_series(3.0, c(-1.0, 0.0)).unwrap();
        assert!((d.total() - s).norm() < 1e-12, "{} vs {s}", d.total());
        // alpha = 3/2, z = 2 e^{-i pi/2}: Z_1 on the cut and one G argument at -pi
        let z = Complex64::from_polar(2.0, -PI / 2.0);
        let d = ml_via_gbeta(1.5, z, 1e-12).unwrap();
        assert!(d.on_boundary && d.terms.iter().any(|t| t.weight == 0.5));
        let s = ml_series(1.5, z).unwrap();
        assert!((d.total() - s).norm() < 1e-9, "{} vs {s}", d.total());
    }

    #[test]
    fn retained_set_matches_scan() {
        for alpha in [1.2, 1.5, 2.3, 2.7, 4.6, 7.1] {
            for z in [c(1.0, 0.0), c(-2.0, 0.3), c(0.0, 3.0), c(-1.0, -1e-3)] {
                let d = ml_via_gbeta(alpha, z, 1e-10).unwrap();
                assert_eq!(d.retained(), retained_brute_force(alpha, z, 50), "alpha {alpha} z {z}");
            }
        }
    }
}
