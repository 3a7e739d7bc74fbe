//! `u`, `v`, `L_beta`, `U_beta` on the whole logarithmic surface.
//!
//! Inside the base sector the rotated Stieltjes representation on one of a
//! few cached rays is evaluated directly; further out the connection formula
//! `u(z e^{-i pi}) - u(z e^{i pi}) = +-2 pi i K(z) u(z)` peels off turns of `2 pi`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use once_cell::sync::OnceCell;

use crate::error::{Error, Result};
use crate::kernel::{kernel_complex, KernelParams};
use crate::solver::{solve_ray_with, SchemeOptions, SolutionGrid, Tag};
use crate::surface::SurfacePoint;

/// Distance kept from the edge `|theta| = pi/2` of the kernel decay region.
pub const RAY_MARGIN: f64 = 0.1;

/// The outermost cached ray.
pub const FAR_RAY: f64 = FRAC_PI_2 - RAY_MARGIN;

/// Cached ray angles in order of preference.
pub const RAY_ANGLES: [f64; 5] = [0.0, FRAC_PI_4, -FRAC_PI_4, FAR_RAY, -FAR_RAY];

/// A ray `theta` serves arguments with `|phi - theta|` up to this.
const PREFERRED_REACH: f64 = 3.0 * FRAC_PI_4;

/// Lazily solved rays for one equation.
#[derive(Debug)]
pub struct RaySolutions {
    params: KernelParams,
    tag: Tag,
    tol: f64,
    opts: SchemeOptions,
    rays: [OnceCell<SolutionGrid>; 5],
}

impl RaySolutions {
    pub fn new(params: KernelParams, tag: Tag, tol: f64) -> Self {
        Self::with_options(params, tag, tol, SchemeOptions::default())
    }

    pub fn with_options(params: KernelParams, tag: Tag, tol: f64, opts: SchemeOptions) -> Self {
        Self { params, tag, tol, opts, rays: Default::default() }
    }

    pub fn params(&self) -> &KernelParams {
        &self.params
    }

    pub fn tag(&self) -> Tag {
        self.tag
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Grid on the cached ray `RAY_ANGLES[index]`, solved on first use.
    pub fn ray(&self, index: usize) -> Result<&SolutionGrid> {
        self.rays[index].get_or_try_init(|| solve_ray_with(&self.params, self.tag, RAY_ANGLES[index], self.tol, &self.opts))
    }

    /// The positive-axis grid.
    pub fn axis(&self) -> Result<&SolutionGrid> {
        self.ray(0)
    }

    /// Largest `|phi|` evaluated without the connection formula.
    pub fn base_sector_limit(&self) -> f64 {
        FAR_RAY + PI - RAY_MARGIN
    }

    /// Index of the ray used for argument `phi`, if any.
    pub fn select_ray(&self, phi: f64) -> Option<usize> {
        if !(phi.abs() <= self.base_sector_limit()) {
            return None;
        }
        let near = RAY_ANGLES.iter().position(|&t| (phi - t).abs() <= PREFERRED_REACH + 1e-12);
        near.or_else(|| {
            // beyond every preferred reach: the far ray on the same side
            Some(if phi > 0.0 { 3 } else { 4 })
        })
    }

    /// Value at `z` from the Stieltjes representation on the chosen ray.
    pub fn eval_sector(&self, z: SurfacePoint) -> Result<Complex64> {
        let index = self.select_ray(z.phi).ok_or(Error::OutOfSector { phi: z.phi, limit: self.base_sector_limit() })?;
        self.eval_on_ray(z, index)
    }

    /// As [`RaySolutions::eval_sector`] with the ray forced; `|phi - theta|` must stay below `pi`.
    pub fn eval_on_ray(&self, z: SurfacePoint, index: usize) -> Result<Complex64> {
        let theta = RAY_ANGLES[index];
        if !((z.phi - theta).abs() < PI) {
            return Err(Error::OutOfSector { phi: z.phi, limit: theta + PI });
        }
        let grid = self.ray(index)?;
        if z.phi == theta {
            return Ok(grid.interpolate(z.r));
        }
        Ok(grid.eval_rotated(Complex64::from_polar(z.r, z.phi - theta)))
    }

    /// Value at any point of the surface.
    pub fn eval_surface(&self, z: SurfacePoint) -> Result<Complex64> {
        let limit = self.base_sector_limit();
        let s = self.tag.sign();
        let two_pi_i = Complex64::new(0.0, 2.0 * PI);
        if z.phi > limit {
            let mid = z.rotated(-PI);
            let k = kernel_complex(mid, &self.params);
            Ok(self.eval_surface(z.rotated(-2.0 * PI))? - two_pi_i * s * k * self.eval_surface(mid)?)
        } else if z.phi < -limit {
            let mid = z.rotated(PI);
            let k = kernel_complex(mid, &self.params);
            Ok(self.eval_surface(z.rotated(2.0 * PI))? + two_pi_i * s * k * self.eval_surface(mid)?)
        } else {
            self.eval_sector(z)
        }
    }

    /// `u(r e^{-i pi}) - u(r e^{i pi}) -+ 2 pi i K(r) u(r)` for real `r > 0`.
    pub fn connection_residual(&self, r: f64) -> Result<f64> {
        let below = self.eval_surface(SurfacePoint::new(r, -PI)?)?;
        let above = self.eval_surface(SurfacePoint::new(r, PI)?)?;
        let on_axis = self.axis()?.interpolate(r);
        let k = kernel_complex(SurfacePoint::real(r), &self.params);
        let rhs = Complex64::new(0.0, 2.0 * PI * self.tag.sign()) * k * on_axis;
        Ok((below - above - rhs).norm())
    }
}

/// `u` and `v` together, for `L_beta = (u + v)/2` and `U_beta = (u - v)/2`.
#[derive(Debug)]
pub struct SolutionPair {
    pub u: RaySolutions,
    pub v: RaySolutions,
}

impl SolutionPair {
    pub fn new(params: KernelParams, tol: f64) -> Self {
        Self { u: RaySolutions::new(params, Tag::U, tol), v: RaySolutions::new(params, Tag::V, tol) }
    }

    pub fn with_options(params: KernelParams, tol: f64, opts: SchemeOptions) -> Self {
        Self {
            u: RaySolutions::with_options(params, Tag::U, tol, opts.clone()),
            v: RaySolutions::with_options(params, Tag::V, tol, opts),
        }
    }

    pub fn params(&self) -> &KernelParams {
        self.u.params()
    }

    pub fn get(&self, tag: Tag) -> &RaySolutions {
        match tag {
            Tag::U => &self.u,
            Tag::V => &self.v,
        }
    }

    /// `(u(z), v(z))`.
    pub fn eval(&self, z: SurfacePoint) -> Result<(Complex64, Complex64)> {
        Ok((self.u.eval_surface(z)?, self.v.eval_surface(z)?))
    }

    pub fn l_beta(&self, z: SurfacePoint) -> Result<Complex64> {
        let (u, v) = self.eval(z)?;
        Ok((u + v) * 0.5)
    }

    pub fn cap_u_beta(&self, z: SurfacePoint) -> Result<Complex64> {
        let (u, v) = self.eval(z)?;
        Ok((u - v) * 0.5)
    }

    /// `u(z) v(z e^{-i pi}) + v(z) u(z e^{-i pi}) - 2`.
    pub fn bilinear_defect(&self, z: SurfacePoint) -> Result<Complex64> {
        let (u, v) = self.eval(z)?;
        let (ur, vr) = self.eval(z.rotated(-PI))?;
        Ok(u * vr + v * ur - 2.0)
    }
}
