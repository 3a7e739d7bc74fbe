//! `G_beta(z) = int_0^inf exp(-t^beta) / (t + z) dt` on the logarithmic surface,
//! with its expansions at infinity and at the origin and the reduction for
//! rational `beta`.

pub mod gamma;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::Adaptive;
use crate::surface::SurfacePoint;
use gamma::{gamma, incomplete_gamma_upper, ln_gamma, EULER_GAMMA};

/// Accepted exponents for `G_beta`.
pub const GBETA_RANGE: (f64, f64) = (0.02, 10.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GbetaMethod {
    /// Quadrature along a ray rotated toward `arg z`.
    Quadrature,
    /// Quadrature on a nearer sheet plus residue terms.
    Continued,
    /// Average of the two boundary values on the negative axis.
    PrincipalValue,
    SmallZ,
    LargeZ,
    Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GbetaValue {
    pub value: Complex64,
    pub method: GbetaMethod,
    pub err_est: f64,
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta >= GBETA_RANGE.0 && beta <= GBETA_RANGE.1) {
        return Err(Error::BetaOutOfRange { beta, min: GBETA_RANGE.0, max: GBETA_RANGE.1 });
    }
    Ok(())
}

/// `G_beta` anywhere on the surface.
///
/// For `|phi| <= pi` the path is turned to `arg t = theta` (between 0 and
/// `phi/2`), which keeps the pole `t = -z` away from it; larger arguments
/// are reduced with `G(z) = G(z e^{-2 pi i}) - 2 pi i exp(-(z e^{-pi i})^beta)`
/// and its mirror image.
pub fn g_beta(z: SurfacePoint, beta: f64, tol: f64) -> Result<GbetaValue> {
    check_beta(beta)?;
    if !(tol > 0.0 && tol < 1e-2) {
        return Err(Error::Domain(format!("tolerance must lie in (0, 1e-2), got {tol}")));
    }
    if z.phi.abs() <= PI {
        return ray_quadrature(z, beta, tol);
    }
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let (base, residue) = if z.phi > PI {
        (z.rotated(-2.0 * PI), -two_pi_i * (-z.rotated(-PI).pow(beta)).exp())
    } else {
        (z.rotated(2.0 * PI), two_pi_i * (-z.rotated(PI).pow(beta)).exp())
    };
    let inner = g_beta(base, beta, tol)?;
    Ok(GbetaValue { value: inner.value + residue, method: GbetaMethod::Continued, err_est: inner.err_est })
}

/// Principal value of the integral at the negative real point `-r`: the
/// mean of the boundary values from above and below (both flagged).
pub fn g_beta_principal_value(r: f64, beta: f64, tol: f64) -> Result<GbetaValue> {
    let up = g_beta(SurfacePoint::new(r, PI)?, beta, tol)?;
    let down = g_beta(SurfacePoint::new(r, -PI)?, beta, tol)?;
    Ok(GbetaValue {
        value: Complex64::new(0.5 * (up.value.re + down.value.re), 0.0),
        method: GbetaMethod::PrincipalValue,
        err_est: up.err_est.max(down.err_est),
    })
}

fn ray_quadrature(z: SurfacePoint, beta: f64, tol: f64) -> Result<GbetaValue> {
    let cap = (0.5 * PI).min(0.4 * PI / beta);
    let theta = (0.5 * z.phi).clamp(-cap, cap);
    let xi = Complex64::from_polar(z.r, z.phi - theta);
    let rot = Complex64::from_polar(1.0, beta * theta);
    let decay = (beta * theta).cos();
    let span = ((1.0 / tol).ln() + 3.0) / decay;
    let quad = Adaptive::new(0.1 * tol, 0.0);
    let est = if beta < 1.0 {
        // w = s^beta
        let alpha = 1.0 / beta;
        let breaks = breakpoints(z.r.powf(beta), span);
        quad.integrate_breaks(&breaks, |w| {
            if w == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            (-rot * w).exp() * (alpha * w.powf(alpha - 1.0)) / (w.powf(alpha) + xi)
        })?
    } else {
        let breaks = breakpoints(z.r, span.powf(1.0 / beta));
        quad.integrate_breaks(&breaks, |s| (-rot * s.powf(beta)).exp() / (s + xi))?
    };
    Ok(GbetaValue { value: est.value, method: GbetaMethod::Quadrature, err_est: est.error })
}

/// `0`, a cluster around the near-pole scale `a`, then powers of two to `end`.
fn breakpoints(a: f64, end: f64) -> Vec<f64> {
    let mut b: Vec<f64> = (-3..=3).map(|j| a * 2f64.powi(j)).collect();
    let mut x = 1.0;
    while x < end {
        b.push(x);
        x *= 2.0;
    }
    b.push(0.0);
    b.push(end);
    b.retain(|&x| x >= 0.0 && x <= end);
    b.sort_by(f64::total_cmp);
    b.dedup();
    b
}

/// Truncated expansion at infinity `sum_{n=1}^{N} (-1)^{n-1} Gamma(n/beta) / (beta z^n)`,
/// with the first omitted term as error estimate.
pub fn g_beta_large_z(z: SurfacePoint, beta: f64, terms: usize) -> Result<(Complex64, f64)> {
    check_beta(beta)?;
    let lim = PI + PI / (2.0 * beta);
    if !(z.phi.abs() < lim) {
        return Err(Error::SectorViolation { phi: z.phi, lo: -lim, hi: lim, boundary: lim.copysign(z.phi) });
    }
    let term = |n: usize| -> Complex64 {
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        let mag = (ln_gamma(n as f64 / beta) - beta.ln() - n as f64 * z.r.ln()).exp();
        Complex64::from_polar(sign * mag, -(n as f64) * z.phi)
    };
    let sum = (1..=terms).map(term).sum();
    Ok((sum, term(terms + 1).norm()))
}

/// Index of the smallest term of the expansion at infinity, at least one.
pub fn optimal_large_z_terms(r: f64, beta: f64) -> usize {
    let mag = |n: usize| ln_gamma(n as f64 / beta) - n as f64 * r.ln();
    let mut best = 1;
    for n in 2..400 {
        if mag(n) < mag(best) {
            best = n;
        } else if mag(n) > mag(best) + 50.0 {
            break;
        }
    }
    best
}

/// Coefficients of the expansion at the origin
/// `-ln z + sum_n a_n z^{beta n} + sum_k c_k (-1)^k z^k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GbetaCoeffs {
    pub beta: f64,
    /// `c_{beta,0} = -gamma / beta`.
    pub c0: f64,
    /// `c_{beta,k}`, `k = 1, 2, ...`.
    pub ck: Vec<f64>,
    /// Coefficient of `ln z`.
    pub log_coefficient: f64,
    /// `a_n = (-1)^{n+1} pi / (n! sin(beta n pi))`, `n = 1, 2, ...`.
    pub power: Vec<f64>,
}

/// Smallest `|sin(beta n pi)|` accepted by the expansion at the origin.
pub const NEAR_RATIONAL_GUARD: f64 = 1e-6;

impl GbetaCoeffs {
    /// Coefficients up to `z^{beta n_power}` and `z^{n_int - 1}`.
    pub fn new(beta: f64, n_power: usize, n_int: usize) -> Result<Self> {
        check_beta(beta)?;
        let mut power = Vec::with_capacity(n_power);
        let mut fact = 1.0;
        for n in 1..=n_power {
            fact *= n as f64;
            let s = (beta * n as f64 * PI).sin();
            if s.abs() < NEAR_RATIONAL_GUARD {
                return Err(Error::NearRational { beta, n, sin: s });
            }
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            power.push(sign * PI / (fact * s));
        }
        let ck = (1..n_int).map(|k| coeff_ck(beta, k)).collect::<Result<Vec<_>>>()?;
        Ok(Self { beta, c0: -EULER_GAMMA / beta, ck, log_coefficient: -1.0, power })
    }

    pub fn eval(&self, z: SurfacePoint) -> Complex64 {
        let mut acc = z.ln() * self.log_coefficient;
        for (n, a) in self.power.iter().enumerate() {
            acc += z.pow(self.beta * (n + 1) as f64) * *a;
        }
        acc += self.c0;
        for (k, c) in self.ck.iter().enumerate() {
            let k = k + 1;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            acc += z.pow(k as f64) * (sign * c);
        }
        acc
    }
}

/// `c_{beta,k} = sum_n (-1)^n / (n! (n beta - k)) + Gamma(-k/beta, 1) / beta`, `k >= 1`.
pub fn coeff_ck(beta: f64, k: usize) -> Result<f64> {
    let k = k as f64;
    let mut sum = 0.0;
    let mut inv_fact = 1.0;
    for n in 0..60 {
        let d = n as f64 * beta - k;
        if d.abs() < 1e-12 {
            return Err(Error::NearRational { beta, n, sin: (beta * n as f64 * PI).sin() });
        }
        sum += if n % 2 == 0 { inv_fact / d } else { -inv_fact / d };
        inv_fact /= (n + 1) as f64;
        if inv_fact < 1e-20 {
            break;
        }
    }
    Ok(sum + incomplete_gamma_upper(-k / beta, 1.0)? / beta)
}

/// `c_{beta,k}` from the complete gamma function, `Gamma(-k/beta)/beta`.
pub fn coeff_ck_closed(beta: f64, k: usize) -> f64 {
    if k == 0 {
        return -EULER_GAMMA / beta;
    }
    gamma(-(k as f64) / beta) / beta
}

/// Expansion at the origin with `n_power` fractional and `n_int` integer-power terms.
pub fn g_beta_small_z(z: SurfacePoint, beta: f64, n_power: usize, n_int: usize) -> Result<Complex64> {
    if !(z.r < 0.5) {
        return Err(Error::Domain(format!("expansion at the origin needs |z| < 0.5, got {}", z.r)));
    }
    Ok(GbetaCoeffs::new(beta, n_power, n_int)?.eval(z))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `I_n(z) = int_0^1 t^m / (t + z) dt` with `m = n p`, for `z` off `[-1, 0]`.
pub fn i_n(m: u64, z: SurfacePoint) -> Complex64 {
    let zc = z.to_complex();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut zk = Complex64::new(1.0, 0.0);
    for k in 0..m {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        acc += zk * (sign / (m - k) as f64);
        zk *= zc;
    }
    let log_part = (zc + 1.0).ln() - z.ln();
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    acc + z.pow(m as f64) * log_part * sign
}

/// `G_p` for a positive integer `p`; for `|z| <= 1` the piece over `[0, 1]`
/// comes from the `I_n` series.
fn g_integer(p: u64, z: SurfacePoint, tol: f64) -> Result<GbetaValue> {
    if z.r > 1.0 {
        return g_beta(z, p as f64, tol);
    }
    let mut head = Complex64::new(0.0, 0.0);
    let mut inv_fact = 1.0;
    for n in 0..40u64 {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        head += i_n(n * p, z) * (sign * inv_fact);
        inv_fact /= (n + 1) as f64;
        if inv_fact < 1e-18 {
            break;
        }
    }
    let zc = z.to_complex();
    let end = ((1.0 / tol).ln() + 3.0).powf(1.0 / p as f64) + 1.0;
    let breaks = breakpoints(1.0, end);
    let breaks: Vec<f64> = std::iter::once(1.0).chain(breaks.into_iter().filter(|&x| x > 1.0)).collect();
    let tail = Adaptive::new(0.1 * tol, 0.0).integrate_breaks(&breaks, |t| Complex64::new((-t.powi(p as i32)).exp(), 0.0) / (t + zc))?;
    Ok(GbetaValue { value: head + tail.value, method: GbetaMethod::Rational, err_est: tail.error })
}

/// `G_{p/q}(z) = sum_{l=0}^{q-1} G_p(e^{(2l+1-q) pi i/q} zeta)`, `zeta = r^{1/q} e^{i phi/q}`.
pub fn g_beta_rational(p: u64, q: u64, z: SurfacePoint, tol: f64) -> Result<GbetaValue> {
    if p == 0 || q == 0 {
        return Err(Error::Domain("rational exponent needs positive p and q".into()));
    }
    let g = gcd(p, q);
    let (p, q) = (p / g, q / g);
    if p >= q {
        return Err(Error::Domain(format!("rational reduction needs p/q < 1, got {p}/{q}")));
    }
    if !(z.phi.abs() <= PI) {
        return Err(Error::Domain(format!("rational reduction is evaluated on the principal sheet, got arg {}", z.phi)));
    }
    let rho = z.r.powf(1.0 / q as f64);
    let mut value = Complex64::new(0.0, 0.0);
    let mut err_est = 0.0;
    for l in 0..q {
        let angle = ((2 * l + 1) as f64 - q as f64) * PI / q as f64 + z.phi / q as f64;
        let part = g_integer(p, SurfacePoint { r: rho, phi: angle }, tol)?;
        value += part.value;
        err_est += part.err_est;
    }
    Ok(GbetaValue { value, method: GbetaMethod::Rational, err_est })
}
