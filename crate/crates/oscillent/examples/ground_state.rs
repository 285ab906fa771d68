//! Entanglement of the ground state, where no classical analogue
//! exists. To leading order in the coupling the state is a two-outcome
//! mixture with fraction f = C^2/(4 omega Omega^3), giving the binary
//! entropy -(1-f)ln(1-f) - f ln f; the exact Gaussian two-mode-squeezing
//! result and the discretized kernel sit close to each other and show
//! how far the leading-order formula stretches.

use oscillent::error::Result;
use oscillent::model::{normal_modes, ModelParams, StateSpec};
use oscillent::quantum::{
    binary_entropy, ground_state_entropy_small_c, ground_state_exact, reduced_density_kernel, Grid,
};

fn main() -> Result<()> {
    let params = ModelParams::new(1.0, 5.0, 0.5)?;
    let small = ground_state_entropy_small_c(&params)?;
    let exact = ground_state_exact(&params)?;

    println!("mixing fraction        f = {:.6e}", small.mixing_fraction);
    println!("binary entropy of f    S = {:.6e} nats", small.value);
    println!("exact Gaussian         S = {:.6e} nats", exact.entropy);
    println!("  squeezing parameter  nu = 1 + {:.3e}", exact.nu - 1.0);
    println!("  pair weight          q = {:.6e}", exact.pair_weight);
    println!(
        "  binary entropy of q  {:.6e} nats (matches the Gaussian value)",
        binary_entropy(exact.pair_weight)
    );
    println!();

    let state = StateSpec::from_quanta(0, 0, &params)?;
    let modes = normal_modes(&params)?;
    let grid = Grid::for_mode(state.n, modes.omega1, params.hbar)?;
    let spectrum = reduced_density_kernel(&state, &params, &grid)?.schmidt_spectrum()?;
    println!("discretized kernel     S = {:.6e} nats", spectrum.entropy);
    println!(
        "kernel vs leading order: {:+.1}% relative",
        100.0 * (spectrum.entropy - small.value) / small.value
    );
    println!(
        "kernel vs exact Gaussian: {:+.3}% relative",
        100.0 * (spectrum.entropy - exact.entropy) / exact.entropy
    );
    Ok(())
}
