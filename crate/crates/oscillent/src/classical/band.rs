//! Support band of the reduced phase-space distribution in polar
//! coordinates of the `(px, omega x)` plane.

use crate::error::{OscillentError, Result};
use crate::model::{ModelParams, StateSpec};
use serde::{Deserialize, Serialize};

/// At polar angle `theta` (with `px = R cos(theta)`, `omega x = R sin(theta)`)
/// the reduced density is supported on `x1 <= R^2 <= x2`, an annular band
/// whose midpoint `E_plus - E_minus = 2 E1` is independent of the angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupportBand {
    /// Polar angle in radians.
    pub theta: f64,
    /// Inner boundary of `R^2` (energy units).
    pub x1: f64,
    /// Outer boundary of `R^2` (energy units).
    pub x2: f64,
}

impl SupportBand {
    /// Half-width `A(theta) = (2 C / Omega^2) |cos theta| sqrt(E_plus^2 - E_minus^2)`.
    pub fn half_width(&self) -> f64 {
        0.5 * (self.x2 - self.x1)
    }

    /// Band midpoint `(x1 + x2) / 2 = E_plus - E_minus`.
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.x1 + self.x2)
    }
}

/// Boundaries of the order-C support band,
/// `X_{1,2} = E_plus - E_minus -/+ A(theta)`. The band depends on the
/// coupling only through `|C|`.
pub fn support_band(theta: f64, state: &StateSpec, params: &ModelParams) -> Result<SupportBand> {
    if state.e_minus.abs() > state.e_plus {
        return Err(OscillentError::InvalidParams(format!(
            "|E_minus| = {} exceeds E_plus = {}",
            state.e_minus.abs(),
            state.e_plus
        )));
    }
    let a = band_half_width(theta, state, params);
    let mid = state.e_plus - state.e_minus;
    Ok(SupportBand {
        theta,
        x1: mid - a,
        x2: mid + a,
    })
}

pub(crate) fn band_half_width(theta: f64, state: &StateSpec, params: &ModelParams) -> f64 {
    let big2 = params.big_omega * params.big_omega;
    let root = (state.e_plus * state.e_plus - state.e_minus * state.e_minus)
        .max(0.0)
        .sqrt();
    (2.0 * params.coupling.abs() / big2) * theta.cos().abs() * root
}
