//! How good is the semiclassical wavefunction? The WKB form
//! sqrt(4/(T p(x))) sin(S(x)/hbar + pi/4-like phase) is compared with
//! the exact Hermite eigenfunction over the inner 90% of the
//! classically allowed region, where the turning-point divergence does
//! not intrude. The normalized overlap (modulus; the global sign is a
//! phase convention) climbs rapidly toward one with the quantum number.

use oscillent::error::Result;
use oscillent::quantum::hermite_function;
use oscillent::wkb::{wkb_wavefunction, WkbState};

fn main() -> Result<()> {
    println!("normalized interior overlap <WKB|exact> over |x| <= 0.9 x_turn:");
    for n in [5u32, 20, 50, 100] {
        let state = WkbState::new(n, 1.0, 1.0)?;
        let wave = wkb_wavefunction(&state);
        let x_max = 0.9 * state.x_turn();
        let points = 20_001;
        let dx = 2.0 * x_max / (points - 1) as f64;

        let mut overlap = 0.0;
        let mut norm_wkb = 0.0;
        let mut norm_exact = 0.0;
        for i in 0..points {
            let x = -x_max + i as f64 * dx;
            let w = wave.evaluate(x)?;
            let h = hermite_function(n, x);
            overlap += w * h * dx;
            norm_wkb += w * w * dx;
            norm_exact += h * h * dx;
        }
        let fidelity = overlap.abs() / (norm_wkb * norm_exact).sqrt();
        println!("  n = {n:<4} overlap = {fidelity:.9}   deficit = {:.2e}", 1.0 - fidelity);
    }
    Ok(())
}
