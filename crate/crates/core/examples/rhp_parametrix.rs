//! Assemble the 2x2 parametrix L(s) and check the model Riemann-Hilbert problem.

use uvbeta::kernel::{KernelParams, Parity};
use uvbeta::rhp::{det, verify_rhp, Parametrix, RhpGrid};
use uvbeta::surface::SurfacePoint;

fn main() -> uvbeta::Result<()> {
    let l = Parametrix::new(KernelParams::new(0.6)?, Parity::Even, 1e-10);
    let s = SurfacePoint::new(1.7, 0.8)?;
    let m = l.assemble_l(s)?;
    println!("L(1.7 e^{{0.8i}}) = [[{:.10}, {:.10}], [{:.10}, {:.10}]]", m[0][0], m[0][1], m[1][0], m[1][1]);
    println!("det - 1 = {:.2e}", (det(&m) - 1.0).norm());
    for x in [-2.0, -0.3, 0.3, 2.0] {
        println!("jump residual at {x:>4}: {:.2e}", l.jump_residual(x)?);
    }
    let r = verify_rhp(&l, &RhpGrid::default())?;
    println!(
        "jump {:.2e}, det {:.2e}, far ok {}, origin ok {} -> {}",
        r.max_jump_residual,
        r.max_det_defect,
        r.far_ok,
        r.origin_ok,
        if r.pass { "pass" } else { "FAIL" }
    );
    Ok(())
}
