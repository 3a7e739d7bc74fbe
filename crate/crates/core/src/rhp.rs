//! The 2x2 model problem: `L` analytic off the real line, `L_+ = L_- v_L`
//! on it, `L -> I` at infinity, bounded by `eps_beta` at the origin.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::continuation::SolutionPair;
use crate::error::{Error, Result};
use crate::kernel::{eta_l, KernelParams, Parity};
use crate::solver::SchemeOptions;
use crate::surface::SurfacePoint;

pub type Mat2 = [[Complex64; 2]; 2];

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut c = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

pub fn det(a: &Mat2) -> Complex64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

/// Largest entry modulus.
pub fn norm_max(a: &Mat2) -> f64 {
    a.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn identity() -> Mat2 {
    let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    [[o, z], [z, o]]
}

fn sub(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut c = *a;
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] -= b[i][j];
        }
    }
    c
}

/// `v_L(s) = [[1, -eta_L(s)], [eta_L(-s), 1]]` for real `s != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JumpMatrix {
    pub s: f64,
    pub entries: Mat2,
}

impl JumpMatrix {
    pub fn new(s: f64, parity: Parity, p: &KernelParams) -> Result<Self> {
        if !(s != 0.0 && s.is_finite()) {
            return Err(Error::Domain(format!("jump matrix needs real s != 0, got {s}")));
        }
        let one = Complex64::new(1.0, 0.0);
        Ok(Self { s, entries: [[one, -eta_l(s, parity, p)], [eta_l(-s, parity, p), one]] })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// Limit from the upper half-plane.
    Plus,
    Minus,
}

/// `L(s)` assembled from `L_beta` and `U_beta` on the appropriate sheets.
#[derive(Debug)]
pub struct Parametrix {
    parity: Parity,
    pair: SolutionPair,
}

impl Parametrix {
    pub fn new(params: KernelParams, parity: Parity, tol: f64) -> Self {
        Self { parity, pair: SolutionPair::new(params, tol) }
    }

    pub fn with_options(params: KernelParams, parity: Parity, tol: f64, opts: SchemeOptions) -> Self {
        Self { parity, pair: SolutionPair::with_options(params, tol, opts) }
    }

    /// Same solutions, other parity.
    pub fn from_pair(pair: SolutionPair, parity: Parity) -> Self {
        Self { parity, pair }
    }

    pub fn params(&self) -> &KernelParams {
        self.pair.params()
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn pair(&self) -> &SolutionPair {
        &self.pair
    }

    pub fn into_pair(self) -> SolutionPair {
        self.pair
    }

    /// Entries from `z` and the companion point `w = z e^{-+ i pi}`:
    /// `[[L(z), +-U(w)], [+-U(z), L(w)]]`.
    fn from_points(&self, z: SurfacePoint, w: SurfacePoint) -> Result<Mat2> {
        let (uz, vz) = self.pair.eval(z)?;
        let (uw, vw) = self.pair.eval(w)?;
        let sign = self.parity.sign();
        Ok([[(uz + vz) * 0.5, (uw - vw) * (0.5 * sign)], [(uz - vz) * (0.5 * sign), (uw + vw) * 0.5]])
    }

    /// `L(s)` for `arg s` in `(0, pi)` or `(-pi, 0)`.
    pub fn assemble_l(&self, s: SurfacePoint) -> Result<Mat2> {
        if s.phi > 0.0 && s.phi < PI {
            self.from_points(s, s.rotated(-PI))
        } else if s.phi < 0.0 && s.phi > -PI {
            self.from_points(s, s.rotated(PI))
        } else {
            Err(Error::OnBoundary { phi: s.phi })
        }
    }

    /// `L_+(x)` or `L_-(x)` at real `x != 0`, evaluated at the exact boundary arguments.
    pub fn boundary_values(&self, x: f64, side: Side) -> Result<Mat2> {
        if !(x != 0.0 && x.is_finite()) {
            return Err(Error::Domain(format!("boundary values need real x != 0, got {x}")));
        }
        let r = x.abs();
        let z = match (x > 0.0, side) {
            (true, _) => SurfacePoint::real(r),
            (false, Side::Plus) => SurfacePoint { r, phi: PI },
            (false, Side::Minus) => SurfacePoint { r, phi: -PI },
        };
        let w = match side {
            Side::Plus => z.rotated(-PI),
            Side::Minus => z.rotated(PI),
        };
        self.from_points(z, w)
    }

    /// `max |L_+(x) - L_-(x) v_L(x)|`.
    pub fn jump_residual(&self, x: f64) -> Result<f64> {
        let plus = self.boundary_values(x, Side::Plus)?;
        let minus = self.boundary_values(x, Side::Minus)?;
        let v = JumpMatrix::new(x, self.parity, self.params())?;
        Ok(norm_max(&sub(&plus, &mat_mul(&minus, &v.entries))))
    }
}

/// Sample points for [`verify_rhp`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RhpGrid {
    /// Real points for the jump check.
    pub jump_points: Vec<f64>,
    /// Off-axis points for `det L`.
    pub det_points: Vec<SurfacePoint>,
    pub far_radii: Vec<f64>,
    pub far_angles: usize,
    /// Positive points approaching the origin.
    pub origin_points: Vec<f64>,
    pub jump_tol: f64,
    pub det_tol: f64,
    /// Bound on `|L - I| |s|` at the far ring.
    pub far_bound: f64,
    /// Bound on `|L| / eps_beta` near the origin.
    pub origin_bound: f64,
}

impl Default for RhpGrid {
    fn default() -> Self {
        let mut jump_points = Vec::new();
        for i in 0..25 {
            let x = 10f64.powf(-3.0 + 6.0 * i as f64 / 24.0);
            jump_points.push(x);
            jump_points.push(-x);
        }
        let det_points = [(0.3, 0.4), (1.7, 0.8), (4.0, 2.5), (0.05, 1.5), (0.3, -0.4), (1.7, -0.8), (4.0, -2.5), (20.0, -1.5)]
            .iter()
            .map(|&(r, phi)| SurfacePoint { r, phi })
            .collect();
        Self {
            jump_points,
            det_points,
            far_radii: vec![1e2, 1e4],
            far_angles: 16,
            origin_points: vec![1e-2, 1e-3, 1e-4],
            jump_tol: 1e-6,
            det_tol: 1e-7,
            far_bound: 1e3,
            origin_bound: 1e2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FarRing {
    pub radius: f64,
    /// `max |L(s) - I| |s|` over the ring.
    pub scaled_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OriginSample {
    pub x: f64,
    pub norm: f64,
    pub scale: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RhpReport {
    pub beta: f64,
    pub parity: Parity,
    pub max_jump_residual: f64,
    /// `max |det v_L - 1|` over the jump points.
    pub max_jump_det_defect: f64,
    pub max_det_defect: f64,
    pub far_field: Vec<FarRing>,
    pub origin: Vec<OriginSample>,
    pub jump_ok: bool,
    pub det_ok: bool,
    pub far_ok: bool,
    pub origin_ok: bool,
    pub pass: bool,
}

/// Checks every condition of the model problem on `grid`; failures are
/// report entries, not errors.
pub fn verify_rhp(l: &Parametrix, grid: &RhpGrid) -> Result<RhpReport> {
    let p = *l.params();
    let mut max_jump: f64 = 0.0;
    let mut max_vdet: f64 = 0.0;
    for &x in &grid.jump_points {
        max_jump = max_jump.max(l.jump_residual(x)?);
        let v = JumpMatrix::new(x, l.parity(), &p)?;
        max_vdet = max_vdet.max((det(&v.entries) - 1.0).norm());
    }
    let mut max_det: f64 = 0.0;
    for &s in &grid.det_points {
        max_det = max_det.max((det(&l.assemble_l(s)?) - 1.0).norm());
    }
    let mut far_field = Vec::new();
    for &radius in &grid.far_radii {
        let mut worst: f64 = 0.0;
        for j in 0..grid.far_angles {
            let phi = -PI + 2.0 * PI * (j as f64 + 0.5) / grid.far_angles as f64;
            let m = l.assemble_l(SurfacePoint { r: radius, phi })?;
            worst = worst.max(norm_max(&sub(&m, &identity())) * radius);
        }
        far_field.push(FarRing { radius, scaled_deviation: worst });
    }
    let class = p.origin_class();
    let mut origin = Vec::new();
    for &x in &grid.origin_points {
        let norm = norm_max(&l.boundary_values(x, Side::Plus)?).max(norm_max(&l.boundary_values(-x, Side::Plus)?));
        origin.push(OriginSample { x, norm, scale: class.scale(x).max(1.0) });
    }
    let jump_ok = max_jump < grid.jump_tol && max_vdet == 0.0;
    let det_ok = max_det < grid.det_tol;
    let far_ok = far_field.iter().all(|f| f.scaled_deviation.is_finite() && f.scaled_deviation < grid.far_bound);
    let origin_ok = origin.iter().all(|o| o.norm / o.scale < grid.origin_bound);
    Ok(RhpReport {
        beta: p.beta,
        parity: l.parity(),
        max_jump_residual: max_jump,
        max_jump_det_defect: max_vdet,
        max_det_defect: max_det,
        far_field,
        origin,
        jump_ok,
        det_ok,
        far_ok,
        origin_ok,
        pass: jump_ok && det_ok && far_ok && origin_ok,
    })
}
