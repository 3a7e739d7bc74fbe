//! G_beta by quadrature, by the small- and large-z expansions, and in closed form.

use uvbeta::gbeta::{g_beta, g_beta_large_z, g_beta_rational, g_beta_small_z, optimal_large_z_terms};
use uvbeta::surface::SurfacePoint;

fn main() -> uvbeta::Result<()> {
    let beta = std::f64::consts::FRAC_1_SQRT_2;
    for (r, phi) in [(0.01, 0.0), (0.5, 1.0), (2.0, -2.5), (40.0, 0.3), (3.0, 4.0)] {
        let z = SurfacePoint::new(r, phi)?;
        let g = g_beta(z, beta, 1e-12)?;
        println!("G({r} e^{{{phi}i}}) = {:.14}  [{:?}, err {:.1e}]", g.value, g.method, g.err_est);
    }
    let small = SurfacePoint::new(0.01, 0.5)?;
    println!("small-z series at 0.01 e^{{0.5i}}: {:.14}", g_beta_small_z(small, beta, 6, 12)?);
    let big = SurfacePoint::new(40.0, 0.3)?;
    let n = optimal_large_z_terms(big.r, beta);
    let (val, err) = g_beta_large_z(big, beta, n)?;
    println!("large-z series at 40 e^{{0.3i}} ({n} terms): {val:.14} (err ~ {err:.1e})");
    let z = SurfacePoint::new(1.5, 0.4)?;
    println!("G_2/3 closed form {:.14}, quadrature {:.14}", g_beta_rational(2, 3, z, 1e-12)?.value, g_beta(z, 2.0 / 3.0, 1e-12)?.value);
    Ok(())
}
