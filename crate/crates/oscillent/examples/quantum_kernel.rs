//! The central check of this laboratory: the von Neumann entropy of the
//! reduced density matrix of a highly excited eigenstate against the
//! classical closed form at the same parameters.
//!
//! The reduced density matrix is built by integrating out the fast
//! coordinate exactly, discretized as a Nystrom integral operator, and
//! diagonalized. The residual quantum-classical gap shrinks as the
//! state climbs deeper into the classical regime (here: hbar halved at
//! fixed energies, doubling both quantum numbers).

use oscillent::classical::classical_entropy_closed_form;
use oscillent::error::Result;
use oscillent::model::{normal_modes, ModelParams, StateSpec};
use oscillent::quantum::{reduced_density_kernel, Grid};

fn entropies(params: &ModelParams, e1: f64, e2: f64) -> Result<(f64, f64, u32)> {
    let state = StateSpec::from_energies(e1, e2, params)?;
    let modes = normal_modes(params)?;
    let grid = Grid::for_mode(state.n, modes.omega1, params.hbar)?;
    let spectrum = reduced_density_kernel(&state, params, &grid)?.schmidt_spectrum()?;
    let classical = classical_entropy_closed_form(&state, params)?.value;
    Ok((spectrum.entropy, classical, state.n))
}

fn main() -> Result<()> {
    let reference = ModelParams::new(1.0, 10.0f64.sqrt(), 0.3)?;
    let (s_q, s_c, n) = entropies(&reference, 20.0, 200.0)?;
    println!("hbar = 1    (n = {n}):");
    println!("  quantum    S = {s_q:.9} nats");
    println!("  classical  S = {s_c:.9} nats");
    println!("  gap            {:+.6} nats", s_q - s_c);
    println!();

    let scaled = ModelParams::with_hbar_and_cell(1.0, 10.0f64.sqrt(), 0.3, 0.5, None)?;
    let (s_q2, s_c2, n2) = entropies(&scaled, 20.0, 200.0)?;
    println!("hbar = 1/2  (n = {n2}, same energies, Delta = pi hbar tracks the cell):");
    println!("  quantum    S = {s_q2:.9} nats");
    println!("  classical  S = {s_c2:.9} nats");
    println!("  gap            {:+.6} nats", s_q2 - s_c2);
    println!();
    println!(
        "|gap| {:.4} -> {:.4}: the equality sharpens toward the classical limit",
        (s_q - s_c).abs(),
        (s_q2 - s_c2).abs()
    );
    Ok(())
}
