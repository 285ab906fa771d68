//! Single-oscillator semiclassical action and the state descriptor the
//! rest of the semiclassical engine works from.

use crate::error::{OscillentError, Result};
use serde::{Deserialize, Serialize};

/// Parity of the oscillator eigenstate; decides sin versus cos in the
/// semiclassical wavefunction and the Schmidt-mode combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: u32) -> Self {
        if n % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

/// Descriptor of a single highly excited oscillator level at the
/// semiclassical energy `E = n hbar omega`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WkbState {
    pub n: u32,
    /// Semiclassical energy `n hbar omega`.
    pub energy: f64,
    pub omega: f64,
    pub hbar: f64,
    pub parity: Parity,
    /// Classical period `2 pi / omega`.
    pub period: f64,
}

impl WkbState {
    pub fn new(n: u32, omega: f64, hbar: f64) -> Result<Self> {
        if n == 0 {
            return Err(OscillentError::InvalidParams(
                "semiclassical level requires n >= 1; the n = 0 orbit has zero radius".into(),
            ));
        }
        for (name, v) in [("omega", omega), ("hbar", hbar)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(OscillentError::InvalidParams(format!(
                    "{name} must be finite and positive, got {v}"
                )));
            }
        }
        let energy = n as f64 * hbar * omega;
        Ok(Self {
            n,
            energy,
            omega,
            hbar,
            parity: Parity::of(n),
            period: 2.0 * std::f64::consts::PI / omega,
        })
    }

    /// Classical turning point `sqrt(2 E) / omega`.
    pub fn x_turn(&self) -> f64 {
        (2.0 * self.energy).sqrt() / self.omega
    }
}

/// Abbreviated action `S(x) = int_0^x p dz` of one oscillator at energy
/// `n hbar omega`: with `sin theta = x / x_turn`,
/// `S = n hbar (theta + sin(2 theta) / 2)`.
pub fn wkb_action(n: u32, x: f64, omega: f64, hbar: f64) -> Result<f64> {
    let ws = WkbState::new(n, omega, hbar)?;
    let x_turn = ws.x_turn();
    if x.abs() > x_turn {
        return Err(OscillentError::ClassicallyForbidden {
            x: x.abs(),
            x_turn,
        });
    }
    let theta = (x / x_turn).clamp(-1.0, 1.0).asin();
    Ok(ws.energy / omega * (theta + 0.5 * (2.0 * theta).sin()))
}

/// Linearized action `x sqrt(2 n hbar omega)`, the `S(x) ~ p(0) x` form
/// valid far from the turning points.
pub fn wkb_action_expanded(n: u32, x: f64, omega: f64, hbar: f64) -> f64 {
    x * (2.0 * n as f64 * hbar * omega).sqrt()
}
