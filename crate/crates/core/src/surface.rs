//! Points on the logarithmic Riemann surface over `C \ {0}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point `r e^{i phi}` with the argument carried explicitly, so the sheet
/// is never lost to a principal-branch reduction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfacePoint {
    pub r: f64,
    pub phi: f64,
}

impl SurfacePoint {
    pub fn new(r: f64, phi: f64) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Domain(format!("modulus must be positive and finite, got {r}")));
        }
        if !phi.is_finite() {
            return Err(Error::Domain(format!("argument must be finite, got {phi}")));
        }
        Ok(Self { r, phi })
    }

    /// Positive real point.
    pub fn real(x: f64) -> Self {
        Self { r: x, phi: 0.0 }
    }

    /// Principal-sheet lift of a nonzero complex number, `arg in (-pi, pi]`.
    pub fn principal(z: Complex64) -> Self {
        let (r, phi) = z.to_polar();
        Self { r, phi }
    }

    /// `z e^{i angle}` on the surface.
    pub fn rotated(self, angle: f64) -> Self {
        Self { r: self.r, phi: self.phi + angle }
    }

    pub fn conj(self) -> Self {
        Self { r: self.r, phi: -self.phi }
    }

    /// The complex number this point projects to.
    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(self.r, self.phi)
    }

    /// `z^p = r^p e^{i p phi}` on this sheet.
    pub fn pow(self, p: f64) -> Complex64 {
        Complex64::from_polar(self.r.powf(p), p * self.phi)
    }

    /// `ln z = ln r + i phi` on this sheet.
    pub fn ln(self) -> Complex64 {
        Complex64::new(self.r.ln(), self.phi)
    }

    /// Argument reduced to `(-pi, pi]`.
    pub fn principal_arg(self) -> f64 {
        let mut a = self.phi % (2.0 * PI);
        if a > PI {
            a -= 2.0 * PI;
        } else if a <= -PI {
            a += 2.0 * PI;
        }
        a
    }
}

/// Complex `expm1`, accurate for small `|z|`.
pub(crate) fn expm1(z: Complex64) -> Complex64 {
    let (s, c) = z.im.sin_cos();
    let half = (0.5 * z.im).sin();
    Complex64::new(z.re.exp_m1() * c - 2.0 * half * half, z.re.exp() * s)
}
