//! u_beta around the origin across several sheets, with the connection check.

use std::f64::consts::PI;

use uvbeta::continuation::SolutionPair;
use uvbeta::kernel::KernelParams;
use uvbeta::surface::SurfacePoint;

fn main() -> uvbeta::Result<()> {
    let pair = SolutionPair::new(KernelParams::new(0.6)?, 1e-10);
    println!("base sector |arg z| < {:.4}", pair.u.base_sector_limit());
    for k in -8..=8 {
        let z = SurfacePoint::new(2.0, k as f64 * PI / 4.0)?;
        let (u, v) = pair.eval(z)?;
        println!("arg = {:>6.3}  u = {:>22.14}  v = {:>22.14}", z.phi, u, v);
    }
    for r in [0.5, 1.0, 2.0, 5.0] {
        println!("connection residual at r = {r}: u {:.2e}, v {:.2e}", pair.u.connection_residual(r)?, pair.v.connection_residual(r)?);
    }
    Ok(())
}
