//! Expansion coefficients at infinity, a partial sum, and the Stokes lines.

use std::f64::consts::FRAC_PI_2;

use uvbeta::asymptotics::{coeff_c, coeff_d, eval_expansion, k_max, stokes_lines, SeriesExpansion};
use uvbeta::continuation::RaySolutions;
use uvbeta::kernel::KernelParams;
use uvbeta::solver::{solve_ray, Tag};
use uvbeta::surface::SurfacePoint;

fn main() -> uvbeta::Result<()> {
    let p = KernelParams::new(0.6)?;
    let u = solve_ray(&p, Tag::U, 0.0, 1e-10)?;
    let v = solve_ray(&p, Tag::V, 0.0, 1e-10)?;
    println!("k_max = {}", k_max(&u));
    for k in 1..=4 {
        println!("c_{k} = {:>14.10}   d_{k} = {:>14.10}", coeff_c(k, &u)?.re, coeff_d(k, &v)?.re);
    }
    let e = SeriesExpansion::at_infinity(&u, 3)?;
    let z = SurfacePoint::new(500.0, FRAC_PI_2)?;
    let (approx, err) = eval_expansion(&e, z, 3)?;
    let direct = RaySolutions::new(p, Tag::U, 1e-10).eval_surface(z)?;
    println!("u(500i): series {approx:.12} (err ~ {err:.1e}), direct {direct:.12}");
    for beta in [0.9, 0.5, 0.25, 0.2, 0.1] {
        let s = stokes_lines(&KernelParams::new(beta)?);
        println!("beta = {beta:<4}  l = {}  angles = [{:+.6}, {:+.6}]", s.l, s.angles[0], s.angles[1]);
    }
    Ok(())
}
