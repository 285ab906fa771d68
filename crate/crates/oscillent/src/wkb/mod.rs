//! Semiclassical engine: oscillator actions and wavefunctions at large
//! quantum number, the arcsine Schmidt spectrum over level offsets, the
//! paired Schmidt modes, and the assembled reduced density matrix.

mod action;
mod kernel;
mod modes;
mod spectrum;
mod wave;

pub use action::{wkb_action, wkb_action_expanded, Parity, WkbState};
pub use kernel::{wkb_reduced_density, wkb_reduced_density_with, DEFAULT_OFFSETS};
pub use modes::{schmidt_modes, Branch, SchmidtMode};
pub use spectrum::{
    lambda_spectrum, wkb_entropy, wkb_entropy_matches_classical, LambdaSpectrum, WkbEntropy,
};
pub use wave::{wkb_wavefunction, WkbWave, TURNING_MARGIN};
