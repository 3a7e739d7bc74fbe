//! The kernel K(t), its contraction bound and the origin class for a few beta.

use uvbeta::kernel::{beta_critical, kernel_real, KernelParams};

fn main() -> uvbeta::Result<()> {
    println!("beta_c = {:.10}", beta_critical());
    println!("{:>5} {:>10} {:>10} {:>10} {:>9}", "beta", "K(0.5)", "K(2)", "M_beta", "origin");
    for beta in [0.2, 0.35, 0.5, 0.6, 0.8] {
        let p = KernelParams::new(beta)?;
        println!(
            "{beta:>5} {:>10.6} {:>10.6} {:>10.6} {:>9?}",
            kernel_real(0.5, &p)?,
            kernel_real(2.0, &p)?,
            p.contraction_bound,
            p.origin_class().kind
        );
    }
    Ok(())
}
