//! The Schmidt spectrum of a highly excited eigenstate: a flat-topped
//! band of near-degenerate eigenvalues whose envelope follows the
//! arcsine law lambda(dn) = 1/(pi sqrt(dn_max^2 - dn^2)), the same law
//! that governs the classical band distribution. The state is nearly
//! maximally entangled over its occupied band: the occupied eigenvalues
//! are all of comparable size.

use oscillent::error::Result;
use oscillent::model::{normal_modes, ModelParams, StateSpec};
use oscillent::quantum::{reduced_density_kernel, Grid};
use oscillent::wkb::lambda_spectrum;

fn main() -> Result<()> {
    let params = ModelParams::new(1.0, 10.0f64.sqrt(), 0.3)?;
    let state = StateSpec::from_energies(20.0, 200.0, &params)?;
    let modes = normal_modes(&params)?;
    let grid = Grid::for_mode(state.n, modes.omega1, params.hbar)?;
    let spectrum = reduced_density_kernel(&state, &params, &grid)?.schmidt_spectrum()?;
    let band = lambda_spectrum(&state, &params)?;

    println!("band half-width    dn_max = {:.6}", band.dn_max);
    println!("predicted occupied 2 dn_max ~ {:.1} modes", 2.0 * band.dn_max);
    println!("measured occupied  {} modes", spectrum.occupied);
    println!("flatness           {:.3} (1 = perfectly flat top)", spectrum.flatness);
    println!("entropy            {:.9} nats", spectrum.entropy);
    println!();

    println!("largest eigenvalues, with the arcsine envelope at the rank quantile:");
    let shown = spectrum.occupied.max(8).min(spectrum.probabilities.len());
    for (rank, lambda) in spectrum.probabilities.iter().take(shown).enumerate() {
        let quantile = (2 * rank + 1) as f64 / (2 * shown) as f64;
        let dn = band.dn_max * (std::f64::consts::PI * quantile / 2.0).sin();
        println!(
            "  lambda[{rank}] = {lambda:.6}   band value at dn = {dn:+.3}: {:.6}",
            band.density(dn)
        );
    }
    println!();
    let occupied_sum: f64 = spectrum
        .probabilities
        .iter()
        .take(spectrum.occupied)
        .sum();
    println!("weight in the occupied band: {occupied_sum:.4}");
    Ok(())
}
