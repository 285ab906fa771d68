//! Oscillent: a computational laboratory for the entropy of two weakly
//! coupled harmonic oscillators.
//!
//! A slow oscillator of frequency `omega` is coupled to a fast one of
//! frequency `Omega` through a bilinear term `C x y`. For a highly excited
//! pure state of the pair, the crate computes the entropy of the reduced
//! single-oscillator description along independent routes and compares
//! them:
//!
//! * classical: the coarse-grained Boltzmann entropy of the reduced
//!   phase-space distribution, by closed form, by quadrature, by sampling
//!   the invariant torus, and by strobing an integrated trajectory;
//! * quantum: the von Neumann entropy of the reduced density matrix of an
//!   exact two-mode product eigenstate;
//! * semiclassical: the same entropy from turning-point wavefunctions and
//!   the analytic arcsine law of the Schmidt spectrum.
//!
//! The point of the exercise is that these agree, and the crate ships the
//! comparisons as library calls, runnable examples, and a `oscillent`
//! binary with a report format.

pub mod cache;
pub mod classical;
pub mod cli;
pub mod config;
pub mod error;
pub mod model;
pub mod quad;
pub mod quantum;
pub mod report;
pub mod svg;
pub mod wkb;

pub use error::{OscillentError, Result};
pub use model::{ModelParams, NormalModes, PhasePoint, RegimeReport, StateSpec};
