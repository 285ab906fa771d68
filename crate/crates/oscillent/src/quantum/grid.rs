//! Uniform quadrature grids sized from the physics of a single mode.

use crate::error::{OscillentError, Result};
use crate::quad::trapezoid_weights;
use std::f64::consts::PI;

/// Fraction of the classical turning radius added beyond it.
const TURNING_PAD: f64 = 1.25;
/// Oscillator lengths of Gaussian tail margin.
const TAIL_LENGTHS: f64 = 5.0;
/// Samples per de Broglie wavelength at the maximum momentum.
const DEFAULT_DENSITY: f64 = 8.0;

/// A symmetric uniform grid with trapezoid weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub half_range: f64,
}

impl Grid {
    /// Grid sized for mode eigenstate `quanta` of a harmonic mode: the
    /// span covers the classical turning point with pad and tail margin,
    /// and the spacing resolves the shortest de Broglie wavelength with
    /// [`DEFAULT_DENSITY`] samples.
    pub fn for_mode(quanta: u32, omega_mode: f64, hbar: f64) -> Result<Grid> {
        Self::for_mode_with_density(quanta, omega_mode, hbar, DEFAULT_DENSITY)
    }

    /// Same sizing rule with an explicit sampling density, for refinement
    /// studies.
    pub fn for_mode_with_density(
        quanta: u32,
        omega_mode: f64,
        hbar: f64,
        density: f64,
    ) -> Result<Grid> {
        if !(omega_mode > 0.0) || !(hbar > 0.0) || !(density >= 2.0) {
            return Err(OscillentError::InvalidParams(format!(
                "grid needs omega > 0, hbar > 0, density >= 2; got omega = {omega_mode}, hbar = {hbar}, density = {density}"
            )));
        }
        let energy = (quanta as f64 + 0.5) * hbar * omega_mode;
        let x_turn = (2.0 * energy).sqrt() / omega_mode;
        let half_range = TURNING_PAD * x_turn + TAIL_LENGTHS * (hbar / omega_mode).sqrt();
        let target_dx = 2.0 * PI * hbar / (density * (2.0 * energy).sqrt());
        let n = (2.0 * half_range / target_dx).ceil() as usize + 1;
        Ok(Self::uniform(half_range, n.max(2)))
    }

    /// Symmetric uniform grid with `n` nodes spanning `[-half_range,
    /// half_range]`.
    pub fn uniform(half_range: f64, n: usize) -> Grid {
        let dx = 2.0 * half_range / (n - 1) as f64;
        let nodes = (0..n).map(|i| -half_range + i as f64 * dx).collect();
        Grid {
            nodes,
            weights: trapezoid_weights(n, dx),
            half_range,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn dx(&self) -> f64 {
        if self.nodes.len() < 2 {
            0.0
        } else {
            self.nodes[1] - self.nodes[0]
        }
    }

    /// Indices of the nodes with `|x| <= bound`.
    pub fn interior_indices(&self, bound: f64) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.nodes[i].abs() <= bound)
            .collect()
    }
}
