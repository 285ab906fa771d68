//! Quantum side of the laboratory: exact eigenstates, the reduced density
//! kernel and its Schmidt spectrum, and the perturbative entropy formulas
//! that bracket the kernel from below.

mod grid;
mod ground;
mod hermite;
mod kernel;
mod lowexc;
mod wavefunction;

pub use grid::Grid;
pub use ground::{
    binary_entropy, ground_state_entropy_small_c, ground_state_exact, GroundStateEntropy,
    GroundStateExact,
};
pub use hermite::hermite_function;
pub use kernel::{
    reduced_density_kernel, von_neumann_entropy, ReducedDensityMatrix, SchmidtSpectrum,
};
pub use lowexc::{low_excitation_entropy, LowExcitationResult};
pub use wavefunction::{
    hamiltonian_expectation, norm_squared, EigenstateWavefunction, MAX_M, MAX_N,
};
