//! The kernel `K(t) = (1/pi) exp(-t^b sin(pi b/2)) sin(t^b cos(pi b/2))`, its
//! continuation to the whole Riemann surface of `t^b`, the jump datum
//! `eta_L`, and the contraction constants.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{expm1, SurfacePoint};

/// Default admissible range for `beta`.
pub const BETA_RANGE: (f64, f64) = (0.05, 0.95);

/// `beta` and everything derived from it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelParams {
    pub beta: f64,
    /// `sin(pi beta / 2)`, the decay rate in `t^beta` on the positive axis.
    pub sin_half: f64,
    /// `cos(pi beta / 2)`, the oscillation frequency in `t^beta`.
    pub cos_half: f64,
    /// `1 / beta`.
    pub alpha: f64,
    /// `cot(pi beta / 2) / (pi beta)`, an upper bound for `int |K(t)| dt / t`.
    pub contraction_bound: f64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    null: bool,
}

impl KernelParams {
    pub fn new(beta: f64) -> Result<Self> {
        Self::with_range(beta, BETA_RANGE.0, BETA_RANGE.1)
    }

    /// Validates `beta` against `[min, max]`, which must itself lie in `(0, 1)`.
    pub fn with_range(beta: f64, min: f64, max: f64) -> Result<Self> {
        if !(min > 0.0 && max < 1.0 && min <= max) {
            return Err(Error::Domain(format!("beta range [{min}, {max}] must lie inside (0, 1)")));
        }
        if !(beta >= min && beta <= max) {
            return Err(Error::BetaOutOfRange { beta, min, max });
        }
        let (sin_half, cos_half) = (FRAC_PI_2 * beta).sin_cos();
        Ok(Self {
            beta,
            sin_half,
            cos_half,
            alpha: 1.0 / beta,
            contraction_bound: cos_half / sin_half / (PI * beta),
            null: false,
        })
    }

    /// Test hook: the same parameters with the kernel forced to zero.
    #[doc(hidden)]
    pub fn nulled(mut self) -> Self {
        self.null = true;
        self
    }

    pub fn is_null(&self) -> bool {
        self.null
    }

    pub fn origin_class(&self) -> OriginClass {
        OriginClass::of(self.beta)
    }

    /// Decay rate of `|K(t e^{i theta})|` in the variable `t^beta`:
    /// `sin(beta (pi/2 - |theta|))`.
    pub fn ray_decay_rate(&self, theta: f64) -> f64 {
        (self.beta * (FRAC_PI_2 - theta.abs())).sin()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OriginKind {
    /// `1/2 < beta < 1`
    Bounded,
    /// `beta = 1/2`
    Log,
    /// `beta < 1/2`
    Power,
}

/// Growth class `eps_beta(s)` at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OriginClass {
    pub kind: OriginKind,
    /// `beta - 1/2` for [`OriginKind::Power`], zero otherwise.
    pub exponent: f64,
}

impl OriginClass {
    pub fn of(beta: f64) -> Self {
        if beta > 0.5 {
            Self { kind: OriginKind::Bounded, exponent: 0.0 }
        } else if beta == 0.5 {
            Self { kind: OriginKind::Log, exponent: 0.0 }
        } else {
            Self { kind: OriginKind::Power, exponent: beta - 0.5 }
        }
    }

    /// `eps_beta(s)` for `|s| = r`.
    pub fn scale(&self, r: f64) -> f64 {
        match self.kind {
            OriginKind::Bounded => 1.0,
            OriginKind::Log => r.ln().abs(),
            OriginKind::Power => r.powf(self.exponent),
        }
    }
}

/// `K(t)` for real `t >= 0`.
pub fn kernel_real(t: f64, p: &KernelParams) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("kernel_real needs t >= 0, got {t}")));
    }
    Ok(kernel_real_unchecked(t, p))
}

#[inline]
pub(crate) fn kernel_real_unchecked(t: f64, p: &KernelParams) -> f64 {
    if p.null || t == 0.0 {
        return 0.0;
    }
    let w = t.powf(p.beta);
    kernel_of_power(w, p)
}

/// `K` as a function of `w = t^beta` on the positive axis.
#[inline]
pub(crate) fn kernel_of_power(w: f64, p: &KernelParams) -> f64 {
    if p.null {
        return 0.0;
    }
    (-w * p.sin_half).exp() * (w * p.cos_half).sin() / PI
}

/// `K(z)` anywhere on the surface, from
/// `(1/2 pi i) [exp(e^{i psi} z^b) - exp(e^{-i psi} z^b)]`, `psi = pi/2 + pi b/2`.
pub fn kernel_complex(z: SurfacePoint, p: &KernelParams) -> Complex64 {
    if p.null {
        return Complex64::new(0.0, 0.0);
    }
    if z.phi == 0.0 {
        return Complex64::new(kernel_real_unchecked(z.r, p), 0.0);
    }
    kernel_of_surface_power(z.pow(p.beta), p)
}

/// `K` as a function of `Z = z^beta` (already lifted to the right sheet).
pub(crate) fn kernel_of_surface_power(zb: Complex64, p: &KernelParams) -> Complex64 {
    if p.null {
        return Complex64::new(0.0, 0.0);
    }
    // e^{i psi} = -sin_half + i cos_half
    let a = Complex64::new(-p.sin_half, p.cos_half);
    let b = a.conj();
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    if zb.norm() < 0.5 {
        // e^{bZ} expm1((a - b) Z), with a - b = 2i cos_half
        let diff = Complex64::new(0.0, 2.0 * p.cos_half) * zb;
        (b * zb).exp() * expm1(diff) / two_pi_i
    } else {
        ((a * zb).exp() - (b * zb).exp()) / two_pi_i
    }
}

/// Parity of the polynomial degree `n`; only `n mod 2` enters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// `(-1)^n`.
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

/// Jump datum `eta_L(s) = 2 pi i (-1)^{n+1} K(s) 1_{[0, inf)}(s)`.
pub fn eta_l(s: f64, parity: Parity, p: &KernelParams) -> Complex64 {
    if s < 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let k = kernel_real_unchecked(s, p);
    Complex64::new(0.0, -2.0 * PI * parity.sign() * k)
}

/// `cot(pi beta/2) / (pi beta)`.
pub fn contraction_bound(p: &KernelParams) -> f64 {
    p.contraction_bound
}

fn bound_minus_one(beta: f64) -> f64 {
    let (s, c) = (FRAC_PI_2 * beta).sin_cos();
    c / s / (PI * beta) - 1.0
}

/// Root of `cot(pi b/2)/(pi b) = 1`; above it the operator is an
/// `L_inf` contraction.
pub fn beta_critical() -> f64 {
    let (mut lo, mut hi) = (0.1, 0.9);
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if bound_minus_one(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
