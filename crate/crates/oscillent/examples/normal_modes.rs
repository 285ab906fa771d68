//! Decouples the two oscillators into normal modes and shows what the
//! rotation preserves: the coefficients satisfy alpha^2 + beta^2 = 1,
//! and the mode frequencies bracket the bare ones.

use oscillent::error::Result;
use oscillent::model::{normal_modes, ModelParams};

fn main() -> Result<()> {
    let params = ModelParams::new(1.0, 10.0f64.sqrt(), 0.3)?;
    let modes = normal_modes(&params)?;

    println!("bare frequencies   omega = {:.6}, Omega = {:.6}", params.omega, params.big_omega);
    println!("coupling           C = {}", params.coupling);
    println!();
    println!("rotation           alpha = {:.9}, beta = {:.9}", modes.alpha, modes.beta);
    println!("                   alpha^2 + beta^2 = {:.15}", modes.alpha.powi(2) + modes.beta.powi(2));
    println!("mode frequencies   omega1 = {:.9} (slow), omega2 = {:.9} (fast)", modes.omega1, modes.omega2);
    println!("splitting          sqrt((Omega^2-omega^2)^2 + 4C^2) = {:.9}", modes.delta_freq);
    println!();

    println!("coupling -> 0 restores the identity rotation:");
    for coupling in [0.3, 0.1, 0.01, 0.001] {
        let weak = normal_modes(&ModelParams::new(1.0, 10.0f64.sqrt(), coupling)?)?;
        println!("  C = {coupling:<6} beta = {:.3e}", weak.beta);
    }
    Ok(())
}
