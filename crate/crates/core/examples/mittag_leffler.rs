//! E_alpha(z) as exponential terms plus a G_beta integral, against the power series.

use num_complex::Complex64;
use uvbeta::mittag::{ml_series, ml_via_gbeta};

fn main() -> uvbeta::Result<()> {
    for (alpha, z) in [(1.5, Complex64::new(2.0, 0.0)), (10.0 / 7.0, Complex64::new(2.0, 0.0)), (2.7, Complex64::new(12f64.sqrt(), 2.0)), (1.2, Complex64::new(-3.0, 1.0))] {
        let d = ml_via_gbeta(alpha, z, 1e-12)?;
        let s = ml_series(alpha, z)?;
        println!("alpha = {alpha:.6}, z = {z}: case {:?}, retained k = {:?}", d.case, d.retained());
        println!("  sigma = {:.12}  I = {:.12}", d.sigma, d.i_value);
        println!("  sum   = {:.14}  series = {s:.14}  |diff| = {:.1e}", d.total(), (d.total() - s).norm());
    }
    Ok(())
}
