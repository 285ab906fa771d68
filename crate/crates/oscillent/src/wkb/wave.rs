//! Semiclassical eigenfunction of one oscillator: dwell-time envelope
//! times a rapid trigonometric phase.

use crate::error::{OscillentError, Result};
use crate::wkb::action::{Parity, WkbState};

/// Fractional distance from the turning point inside which evaluation is
/// refused; the amplitude diverges there.
pub const TURNING_MARGIN: f64 = 1e-3;

/// Evaluatable semiclassical wavefunction. The phase and envelope are
/// taken at the shifted energy `(n + 1/2) hbar omega`, which locks the
/// node pattern to the exact eigenfunction; `state.energy` keeps the
/// bare `n hbar omega` used by the action bookkeeping.
#[derive(Debug, Clone)]
pub struct WkbWave {
    pub state: WkbState,
    energy_eff: f64,
}

/// Builds the semiclassical wavefunction for level `ws`.
pub fn wkb_wavefunction(ws: &WkbState) -> WkbWave {
    WkbWave {
        energy_eff: ws.energy + 0.5 * ws.hbar * ws.omega,
        state: ws.clone(),
    }
}

impl WkbWave {
    /// Turning point of the shifted energy; the divergence of the
    /// envelope sits here.
    pub fn x_turn(&self) -> f64 {
        (2.0 * self.energy_eff).sqrt() / self.state.omega
    }

    /// `sqrt(4 / (T p(x))) {sin, cos}(S(x) / hbar)` with the branch
    /// fixed by parity.
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        let x_turn = self.x_turn();
        if x.abs() >= x_turn * (1.0 - TURNING_MARGIN) {
            return Err(OscillentError::TurningPointProximity {
                x: x.abs(),
                x_turn,
                margin: TURNING_MARGIN,
            });
        }
        let omega = self.state.omega;
        let p = (2.0 * self.energy_eff - omega * omega * x * x).sqrt();
        let theta = (x / x_turn).asin();
        let action = self.energy_eff / omega * (theta + 0.5 * (2.0 * theta).sin());
        let phase = action / self.state.hbar;
        let envelope = (4.0 / (self.state.period * p)).sqrt();
        Ok(match self.state.parity {
            Parity::Odd => envelope * phase.sin(),
            Parity::Even => envelope * phase.cos(),
        })
    }

    /// Phase `S(x) / hbar` at the shifted energy, exposed for root
    /// finding in tests and figure annotation.
    pub fn phase(&self, x: f64) -> f64 {
        let theta = (x / self.x_turn()).clamp(-1.0, 1.0).asin();
        self.energy_eff / self.state.omega * (theta + 0.5 * (2.0 * theta).sin()) / self.state.hbar
    }
}
