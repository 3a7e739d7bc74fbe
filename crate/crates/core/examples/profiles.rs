//! u_beta and v_beta on the positive axis: the solution profiles for three beta.

use uvbeta::kernel::KernelParams;
use uvbeta::solver::{default_tolerance, solve_ray, Tag};

fn main() -> uvbeta::Result<()> {
    let xs = [0.0, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0, 100.0];
    for beta in [0.3, 0.5, 0.7] {
        let p = KernelParams::new(beta)?;
        let tol = default_tolerance(beta);
        let u = solve_ray(&p, Tag::U, 0.0, tol)?;
        let v = solve_ray(&p, Tag::V, 0.0, tol)?;
        println!("beta = {beta}  ({} nodes, residual {:.1e})", u.nodes().len(), u.residual());
        println!("{:>8} {:>12} {:>12}", "x", "u(x)", "v(x)");
        for x in xs {
            println!("{x:>8} {:>12.8} {:>12.8}", u.interpolate(x).re, v.interpolate(x).re);
        }
        println!();
    }
    Ok(())
}
